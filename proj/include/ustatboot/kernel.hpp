#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ustatboot {

enum class KernelKind { Variance, Gini, Kendall, Custom };

/// A symmetric order-2 kernel h(x, y) on d-vectors.
///
/// Built-in kernels:
///  - variance: e(x, y) = (x - y)^2 / 2, d = 1; U-statistic is the sample variance.
///  - gini:     f(x, y) = |x - y|, d = 1; Gini's mean difference.
///  - kendall:  g(x, y) = 1(x < y) + 1(y < x) with strict componentwise order,
///              any d >= 1. Ties in any coordinate give 0.
class Kernel {
 public:
  using Function = std::function<double(std::span<const double>, std::span<const double>)>;

  static Kernel variance();
  static Kernel gini();
  static Kernel kendall();
  /// A user kernel. `required_dim == 0` accepts any dimension. Symmetry is the
  /// caller's responsibility.
  static Kernel custom(Function fn, std::string name = "custom", std::size_t required_dim = 0);

  [[nodiscard]] KernelKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t required_dim() const noexcept { return required_dim_; }

  /// Throws ArgumentError when the kernel cannot be applied to d-vectors.
  void check_dim(std::size_t d) const;

  /// Unchecked evaluation.
  [[nodiscard]] double operator()(std::span<const double> x, std::span<const double> y) const;

  /// Calls `fn` with a concrete callable for this kernel so that hot loops
  /// avoid the std::function indirection for built-in kernels.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const;

 private:
  Kernel(KernelKind kind, std::string name, std::size_t required_dim, Function fn = {})
      : kind_(kind), name_(std::move(name)), required_dim_(required_dim), fn_(std::move(fn)) {}

  KernelKind kind_ = KernelKind::Variance;
  std::string name_;
  std::size_t required_dim_ = 1;
  Function fn_;
};

namespace kernels {

inline double variance(std::span<const double> x, std::span<const double> y) noexcept {
  const double diff = x[0] - y[0];
  return 0.5 * diff * diff;
}

inline double gini(std::span<const double> x, std::span<const double> y) noexcept {
  return x[0] > y[0] ? x[0] - y[0] : y[0] - x[0];
}

inline double kendall(std::span<const double> x, std::span<const double> y) noexcept {
  bool less = true;
  bool greater = true;
  for (std::size_t c = 0; c < x.size(); ++c) {
    less = less && x[c] < y[c];
    greater = greater && y[c] < x[c];
  }
  return (less || greater) ? 1.0 : 0.0;
}

}  // namespace kernels

template <class Fn>
decltype(auto) Kernel::visit(Fn&& fn) const {
  switch (kind_) {
    case KernelKind::Variance:
      return fn(&kernels::variance);
    case KernelKind::Gini:
      return fn(&kernels::gini);
    case KernelKind::Kendall:
      return fn(&kernels::kendall);
    case KernelKind::Custom:
      break;
  }
  return fn(std::cref(fn_));
}

/// Checked evaluation: throws ArgumentError on dimension mismatch.
double kernel_eval(const Kernel& kernel, std::span<const double> x, std::span<const double> y);

/// Looks up a built-in kernel by name ("variance"/"e", "gini"/"f", "kendall"/"g").
std::optional<Kernel> kernel_from_name(std::string_view name);

}  // namespace ustatboot
