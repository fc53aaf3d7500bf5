#pragma once

#include <doctest.h>

#include <functional>
#include <string>
#include <vector>

#include "tropcorr/errors.hpp"
#include "tropcorr/rational.hpp"
#include "tropcorr/trees.hpp"

namespace tctest {

inline tropcorr::Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const tropcorr::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return tropcorr::Errc::Internal;
}

inline tropcorr::Rational q(const char* text) { return tropcorr::parse_rational(text); }

inline tropcorr::Split split(const tropcorr::Marking& m, std::vector<std::string> labels) {
  return tropcorr::make_split(m, m.mask_of(labels));
}

}  // namespace tctest
