#include <exception>

#include "tropcorr/errors.hpp"
#include "tropcorr/hurwitz.hpp"

namespace tropcorr {

namespace {

struct Presentation {
  std::vector<int> word;
  MonodromyCover cover;
  DynamicalPortrait portrait;
};

struct Job {
  std::size_t presentation;
  StandardMulticurve gamma;
};

ScanResult scan_impl(const MonodromyCover& cover, const DynamicalPortrait& portrait, const ScanOptions& options,
                     bool parallel) {
  if (cover.order().size() > options.max_n) {
    throw Error(Errc::SizeBound, "scan limited to " + std::to_string(options.max_n) + " marked points");
  }
  if (cover.degree() > options.max_degree) {
    throw Error(Errc::SizeBound, "scan limited to degree " + std::to_string(options.max_degree));
  }
  ScanResult result;
  result.signature = orbifold_signature(cover, portrait);
  result.parabolic_warning = !result.signature.hyperbolic;

  std::vector<Presentation> presentations{{{}, cover, portrait}};
  for (const auto& word : options.braid_words) {
    if (word.empty()) continue;
    BraidResult moved = braid_act(cover, portrait, word);
    presentations.push_back({word, std::move(moved.cover), std::move(moved.portrait)});
  }
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < presentations.size(); ++p) {
    for (auto& gamma : enumerate_standard_multicurves(presentations[p].cover.order(), options.max_blocks)) {
      jobs.push_back({p, std::move(gamma)});
    }
  }
  result.multicurves_examined = jobs.size();

  std::vector<std::optional<FixedConeReport>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      const Job& job = jobs[static_cast<std::size_t>(i)];
      const Presentation& pr = presentations[job.presentation];
      const CombinatorialType type = build_type(pr.cover, pr.portrait, job.gamma);
      if (is_weakly_fixed(type)) slots[static_cast<std::size_t>(i)] = fixed_cone_report(type, job.gamma);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (slots[i]) result.entries.push_back({presentations[jobs[i].presentation].word, std::move(*slots[i])});
  }
  return result;
}

}  // namespace

ScanResult scan_obstructions(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                             const ScanOptions& options) {
  return scan_impl(cover, portrait, options, true);
}

ScanResult scan_obstructions_serial(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                    const ScanOptions& options) {
  return scan_impl(cover, portrait, options, false);
}

std::string_view status_name(IterationStatus status) {
  switch (status) {
    case IterationStatus::Completed: return "Completed";
    case IterationStatus::ConePoint: return "ConePoint";
    case IterationStatus::NonStandardCurve: return "NonStandardCurve";
  }
  return "Unknown";
}

IterationResult iterate_pullback(const MonodromyCover& cover, const DynamicalPortrait& portrait,
                                 const WeightedMulticurve& start, std::size_t steps) {
  IterationResult out;
  WeightedMulticurve current = start;
  out.trace.push_back(make_point(current.curve.dual_tree(), current.weights));
  for (std::size_t k = 0; k < steps; ++k) {
    const ConePoint next = pi2_trop(nu_trop(cover, portrait, current));
    out.trace.push_back(next);
    if (next.is_cone_point()) {
      out.status = IterationStatus::ConePoint;
      return out;
    }
    std::vector<Mask> sides;
    for (Split s : next.tree().splits()) {
      try {
        canonical_block(cover.order(), s.side);
      } catch (const Error& e) {
        if (e.code() != Errc::NotConsecutive) throw;
        out.status = IterationStatus::NonStandardCurve;
        return out;
      }
      sides.push_back(s.side);
    }
    current = make_weighted(validate_multicurve(cover.order(), sides), next.coords());
  }
  out.status = IterationStatus::Completed;
  return out;
}

}  // namespace tropcorr
