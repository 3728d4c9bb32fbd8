#pragma once

// Named built-in test functions selectable from a config.

#include <optional>
#include <string>
#include <vector>

#include "qstancu/field.hpp"

namespace qstancu::cli {

struct Builtin1D {
  std::string name;
  Field1D f;
};

/// Two-variable built-in. Separable ones record their factors so the tensor
/// structure of the operator can be checked.
struct Builtin2D {
  enum class Shape { other, product, sum };
  std::string name;
  Field2D f;
  Shape shape = Shape::other;
  std::optional<Field1D> g;  // factor or summand in x
  std::optional<Field1D> h;  // factor or summand in y
};

/// e0, e1, e2, x_over_1px, sqrt, min1.
std::optional<Builtin1D> find_function_1d(const std::string& name);
/// one, e1_e1, x_over_1px_sum, sqrt_product, e2_sum.
std::optional<Builtin2D> find_function_2d(const std::string& name);

std::vector<std::string> function_names_1d();
std::vector<std::string> function_names_2d();

}  // namespace qstancu::cli
