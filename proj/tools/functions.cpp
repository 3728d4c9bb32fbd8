#include "functions.hpp"

#include <algorithm>
#include <cmath>

namespace qstancu::cli {

namespace {

Field1D over_1px() {
  return [](double t) { return t / (1.0 + t); };
}

Field1D root() {
  return [](double t) { return std::sqrt(t); };
}

}  // namespace

std::optional<Builtin1D> find_function_1d(const std::string& name) {
  if (name == "e0") return Builtin1D{name, Field1D::monomial(0)};
  if (name == "e1") return Builtin1D{name, Field1D::monomial(1)};
  if (name == "e2") return Builtin1D{name, Field1D::monomial(2)};
  if (name == "x_over_1px") return Builtin1D{name, over_1px()};
  if (name == "sqrt") return Builtin1D{name, root()};
  if (name == "min1") return Builtin1D{name, [](double t) { return std::min(t, 1.0); }};
  return std::nullopt;
}

std::optional<Builtin2D> find_function_2d(const std::string& name) {
  using Shape = Builtin2D::Shape;
  if (name == "one") {
    return Builtin2D{name, [](double, double) { return 1.0; }, Shape::product,
                     Field1D::monomial(0), Field1D::monomial(0)};
  }
  if (name == "e1_e1") {
    return Builtin2D{name, [](double x, double y) { return x * y; }, Shape::product,
                     Field1D::monomial(1), Field1D::monomial(1)};
  }
  if (name == "x_over_1px_sum") {
    return Builtin2D{name, [](double x, double y) { return x / (1.0 + x) + y / (1.0 + y); },
                     Shape::sum, over_1px(), over_1px()};
  }
  if (name == "sqrt_product") {
    return Builtin2D{name, [](double x, double y) { return std::sqrt(x) * std::sqrt(y); },
                     Shape::product, root(), root()};
  }
  if (name == "e2_sum") {
    return Builtin2D{name, [](double x, double y) { return x * x + y * y; }, Shape::sum,
                     Field1D::monomial(2), Field1D::monomial(2)};
  }
  return std::nullopt;
}

std::vector<std::string> function_names_1d() {
  return {"e0", "e1", "e2", "x_over_1px", "sqrt", "min1"};
}

std::vector<std::string> function_names_2d() {
  return {"one", "e1_e1", "x_over_1px_sum", "sqrt_product", "e2_sum"};
}

}  // namespace qstancu::cli
