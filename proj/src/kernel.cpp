#include "ustatboot/kernel.hpp"

#include <string>

#include "ustatboot/error.hpp"

namespace ustatboot {

Kernel Kernel::variance() { return Kernel(KernelKind::Variance, "variance", 1); }

Kernel Kernel::gini() { return Kernel(KernelKind::Gini, "gini", 1); }

Kernel Kernel::kendall() { return Kernel(KernelKind::Kendall, "kendall", 0); }

Kernel Kernel::custom(Function fn, std::string name, std::size_t required_dim) {
  if (!fn) {
    throw ArgumentError("custom kernel requires a callable");
  }
  return Kernel(KernelKind::Custom, std::move(name), required_dim, std::move(fn));
}

void Kernel::check_dim(std::size_t d) const {
  if (d == 0) {
    throw ArgumentError("kernel " + name_ + ": observations must have dimension >= 1");
  }
  if (required_dim_ != 0 && d != required_dim_) {
    throw ArgumentError("kernel " + name_ + " requires dimension " + std::to_string(required_dim_) +
                        ", got " + std::to_string(d));
  }
}

double Kernel::operator()(std::span<const double> x, std::span<const double> y) const {
  return visit([&](const auto& h) { return h(x, y); });
}

double kernel_eval(const Kernel& kernel, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ArgumentError("kernel arguments differ in dimension");
  }
  kernel.check_dim(x.size());
  return kernel(x, y);
}

std::optional<Kernel> kernel_from_name(std::string_view name) {
  if (name == "variance" || name == "e") {
    return Kernel::variance();
  }
  if (name == "gini" || name == "f") {
    return Kernel::gini();
  }
  if (name == "kendall" || name == "g") {
    return Kernel::kendall();
  }
  return std::nullopt;
}

}  // namespace ustatboot
