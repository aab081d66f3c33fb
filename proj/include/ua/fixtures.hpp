#pragma once

#include "ua/algebra.hpp"

namespace ua::fixtures {

inline Operation ternary(const std::string& name, int n, int (*f)(int, int, int, int)) {
  Operation o{name, 3, {}};
  for_each_tuple(n, 3, [&](const std::vector<int>& t) { o.table.push_back(f(t[0], t[1], t[2], n)); });
  return o;
}

// ({0,1}; d = x xor y xor z)
inline Algebra z2() {
  return Algebra(2, {ternary("d", 2, [](int x, int y, int z, int) { return x ^ y ^ z; })});
}

// ({0,1,2,3}; p = x - y + z mod 4)
inline Algebra z4() {
  return Algebra(4, {ternary("p", 4, [](int x, int y, int z, int n) { return ((x - y + z) % n + n) % n; })});
}

// ({0,1}; meet)
inline Algebra s2() {
  Operation o{"meet", 2, {0, 0, 0, 1}};
  return Algebra(2, {o});
}

// The 2-element semilattice with its ternary meet, named like the Maltsev fixtures.
inline Algebra s2_ternary(const std::string& name = "d") {
  return Algebra(2, {ternary(name, 2, [](int x, int y, int z, int) { return x & y & z; })});
}

// Z2 × Z2, pairs encoded as 2a + b.
inline Algebra sq2() { return product(z2(), z2()).alg; }

// Z4 under the name "d", so it shares a signature with z2().
inline Algebra z4_named(const std::string& name) {
  Algebra A = z4();
  Operation o = A.op(0);
  o.name = name;
  return Algebra(4, {o});
}

}  // namespace ua::fixtures
