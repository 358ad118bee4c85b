#pragma once

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/sample.hpp"

namespace fixtures {

using namespace drinfeld;
using namespace drinfeld::sample;

inline Ring f2(u32 theta = 1) { return Ring::finite_field(2, 2, {0, 1}, {theta}); }
inline Ring f3(u32 theta = 1) { return Ring::finite_field(3, 3, {0, 1}, {theta}); }
/// F_4 = F_2[w]/(w^2+w+1) with q = 2 and theta = w.
inline Ring f4(std::vector<u32> theta = {0, 1}) { return Ring::finite_field(2, 2, {1, 1, 1}, std::move(theta)); }
/// F_4 with q = 4.
inline Ring f4q4(std::vector<u32> theta = {0, 1}) { return Ring::finite_field(2, 4, {1, 1, 1}, std::move(theta)); }
inline Ring f8(std::vector<u32> theta = {0, 1}) { return Ring::finite_field(2, 2, {1, 1, 0, 1}, std::move(theta)); }
/// F_9 = F_3[i]/(i^2+1).
inline Ring f9(u64 q = 3, std::vector<u32> theta = {0, 1}) {
  return Ring::finite_field(3, q, {1, 0, 1}, std::move(theta));
}
inline Ring f16(u64 q = 2, std::vector<u32> theta = {0, 1}) {
  return Ring::finite_field(2, q, {1, 1, 0, 0, 1}, std::move(theta));
}

inline Elem w(const Ring& R) { return R.generator(); }

inline Poly tpoly(const Ring& R, const char* s) { return parse_poly(R, s); }

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace fixtures
