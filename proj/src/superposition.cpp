#include "scurve/superposition.hpp"

#include <cmath>
#include <string>

#include "scurve/errors.hpp"

namespace scurve {

void validate(const Superposition& sup) {
  if (!std::isfinite(sup.a) || sup.a < 0.0) throw DomainError("superposition needs finite a >= 0");
  if (sup.components.empty()) throw DomainError("superposition needs at least one component");
  for (std::size_t i = 0; i < sup.components.size(); ++i) {
    const Component& c = sup.components[i];
    if (!std::isfinite(c.p) || !std::isfinite(c.m) || !std::isfinite(c.x_c) ||
        !std::isfinite(c.y_c)) {
      throw DomainError("component " + std::to_string(i) + " has a non-finite field");
    }
  }
}

Jet jet(const Superposition& sup, double x) {
  Jet total;
  for (std::size_t i = 0; i < sup.components.size(); ++i) {
    const double p = sup.components[i].p;
    const Jet j = scurve::jet(sup.term(i), x);
    total.y += p * j.y;
    total.d1 += p * j.d1;
    total.d2 += p * j.d2;
    total.d3 += p * j.d3;
    total.d4 += p * j.d4;
  }
  return total;
}

double eval(const Superposition& sup, double x) {
  double y = 0.0;
  for (std::size_t i = 0; i < sup.components.size(); ++i) {
    y += sup.components[i].p * eval_forward(sup.term(i), x);
  }
  return y;
}

double d1(const Superposition& sup, double x) { return jet(sup, x).d1; }
double d2(const Superposition& sup, double x) { return jet(sup, x).d2; }
double d3(const Superposition& sup, double x) { return jet(sup, x).d3; }
double d4(const Superposition& sup, double x) { return jet(sup, x).d4; }

SubprocessValues decompose_subprocesses(const Superposition& sup, double x) {
  if (sup.a == 0.0) throw DecompositionError("S_I/S_II are undefined for a = 0");
  SubprocessValues out;
  for (const Component& c : sup.components) {
    const Radicals r = radicals(sup.a, c.m, x - c.x_c);
    out.s_one += c.p * r.s1;
    out.s_two += c.p * r.s2;
    out.offset += c.p * c.y_c;
  }
  return out;
}

SignSplit split_by_sign(const Superposition& sup) {
  SignSplit out;
  out.magnetizing.a = sup.a;
  out.dissipative.a = sup.a;
  for (const Component& c : sup.components) {
    (c.magnetizing() ? out.magnetizing : out.dissipative).components.push_back(c);
  }
  return out;
}

double slope_sum(const Superposition& sup) {
  double s = 0.0;
  for (const Component& c : sup.components) s += c.p * c.m;
  return s;
}

}  // namespace scurve
