#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace qstancu {

/// A real function on [0, inf).
///
/// A field may additionally carry monomial coefficients. When it does, the
/// Kantorovich evaluators integrate it with the closed-form q-integral of
/// t^m instead of summing the Jackson series, which is what makes q very
/// close to 1 tractable. Plain callables always take the series route.
class Field1D {
 public:
  using Fn = std::function<double(double)>;

  Field1D() = default;

  template <class F>
    requires(!std::same_as<std::remove_cvref_t<F>, Field1D> &&
             std::is_invocable_r_v<double, F, double>)
  Field1D(F&& fn) : fn_(std::forward<F>(fn)) {}  // NOLINT(google-explicit-constructor)

  /// Sum of coeffs[m] * t^m.
  static Field1D polynomial(std::vector<double> coeffs);
  static Field1D monomial(int degree);

  double operator()(double t) const { return fn_(t); }

  bool is_polynomial() const { return !coeffs_.empty(); }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  Fn fn_;
  std::vector<double> coeffs_;
};

/// A real function on [0, inf)^2.
class Field2D {
 public:
  using Fn = std::function<double(double, double)>;

  Field2D() = default;

  template <class F>
    requires(!std::same_as<std::remove_cvref_t<F>, Field2D> &&
             std::is_invocable_r_v<double, F, double, double>)
  Field2D(F&& fn) : fn_(std::forward<F>(fn)) {}  // NOLINT(google-explicit-constructor)

  double operator()(double x, double y) const { return fn_(x, y); }

 private:
  Fn fn_;
};

}  // namespace qstancu
