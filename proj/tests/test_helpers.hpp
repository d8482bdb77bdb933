#pragma once

#include <doctest.h>

#include "pathprob/error.hpp"

namespace testing {

// Runs f and returns the kind of the pathprob::Error it throws.
template <typename F>
pathprob::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const pathprob::Error& e) {
    return e.kind();
  }
  FAIL("expected pathprob::Error");
  return pathprob::ErrorKind::InvalidConfig;
}

}  // namespace testing
