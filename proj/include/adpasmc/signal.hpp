#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adpasmc {

/// Scalar time signal built from a small vocabulary of primitives with
/// analytic first and second derivatives. Immutable; copies share structure.
///
/// Text form (used by config files):
///   zero
///   const(c)
///   sine(amplitude, omega, phase)          amplitude*sin(omega*t + phase)
///   poly(c0, c1, c2, ...)                  c0 + c1 t + c2 t^2 + ...
///   step(t0, duration, from, to)           quintic blend, duration 0 = hard step
///   piecewise(t0: sig, t1: sig, ...)       sig_i on [t_i, t_{i+1}), zero before t0
///   scale(k, sig)
///   sig + sig, sig - sig
/// Numeric arguments accept + - * / ( ) and the constant pi.
class Signal {
 public:
  Signal();

  static Signal zero();
  static Signal constant(double c);
  static Signal sine(double amplitude, double omega, double phase);
  static Signal polynomial(std::vector<double> coeffs);
  static Signal smooth_step(double t0, double duration, double from, double to);
  static Signal piecewise(std::vector<std::pair<double, Signal>> segments);
  static Signal parse(std::string_view text);

  Signal operator+(const Signal& other) const;
  Signal scaled(double k) const;

  double value(double t) const { return eval(t, 0); }
  double rate(double t) const { return eval(t, 1); }
  double accel(double t) const { return eval(t, 2); }

  /// Canonical text form; parse(to_string()) reproduces the signal.
  std::string to_string() const;

  struct Node;

 private:
  explicit Signal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  double eval(double t, int order) const;
  std::shared_ptr<const Node> node_;
};

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace adpasmc
