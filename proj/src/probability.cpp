#include "pathprob/probability.hpp"

#include <cmath>

#include "pathprob/error.hpp"

namespace pathprob {

double kernel_eval(const PairKernel& kernel, double x) {
  switch (kernel.branch) {
    case KernelBranch::Cosine: return 2.0 * std::cos(kernel.rate * x) + 2.0;
    case KernelBranch::Hyperbolic: return 2.0 * std::cosh(kernel.rate * x) + 2.0;
    case KernelBranch::Constant: return 4.0;
  }
  return 4.0;
}

double OneArgSolution::operator()(double phi) const { return std::exp(growth_rate * phi); }

double pn_amplitude(std::span<const double> phis, double kappa) {
  if (phis.empty()) throw Error(ErrorKind::EmptyVector, "P^n needs at least one path");
  // P¹ ≡ 1 exactly; cos² + sin² can miss it by an ulp.
  if (phis.size() == 1) return 1.0;
  double re = 0.0;
  double im = 0.0;
  for (double phi : phis) {
    const double phase = kappa * phi;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return re * re + im * im;
}

double pn_amplitude(const InvariantVector& v) { return pn_amplitude(v.phis, v.kappa); }

double pn_pairwise(const InvariantVector& v) {
  const std::size_t n = v.size();
  if (n < 2) throw Error(ErrorKind::TooFewPaths, "pairwise form needs n >= 2");
  const PairKernel kernel{KernelBranch::Cosine, v.kappa};
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += kernel_eval(kernel, v.phis[i] - v.phis[j]);
    }
  }
  const double nd = static_cast<double>(n);
  return sum - nd * (nd - 2.0);
}

double pn_kernel(const PairKernel& kernel, std::span<const double> phis) {
  if (phis.empty()) throw Error(ErrorKind::EmptyVector, "P^n needs at least one path");
  switch (kernel.branch) {
    case KernelBranch::Cosine: return pn_amplitude(phis, kernel.rate);
    case KernelBranch::Hyperbolic: {
      double up = 0.0;
      double down = 0.0;
      for (double phi : phis) {
        up += std::exp(kernel.rate * phi);
        down += std::exp(-kernel.rate * phi);
      }
      return up * down;
    }
    case KernelBranch::Constant: {
      const double n = static_cast<double>(phis.size());
      return n * n;
    }
  }
  return 0.0;
}

ProbabilityFamily quantum_family(double kappa) {
  return [kappa](std::span<const double> phis) { return pn_amplitude(phis, kappa); };
}

ProbabilityFamily kernel_family(const PairKernel& kernel) {
  return [kernel](std::span<const double> phis) { return pn_kernel(kernel, phis); };
}

double EventSystem::pair(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n) throw Error(ErrorKind::SizeMismatch, "pair index out of range");
  // Offset of row i in the packed upper triangle.
  const std::size_t row = i * (2 * n - i - 1) / 2;
  return pairs[row + (j - i - 1)];
}

void validate(const EventSystem& ev) {
  if (ev.singles.size() != ev.n) {
    throw Error(ErrorKind::SizeMismatch, "singles must have n entries");
  }
  if (ev.pairs.size() != ev.n * (ev.n - (ev.n > 0 ? 1 : 0)) / 2) {
    throw Error(ErrorKind::SizeMismatch, "pairs must have n(n-1)/2 entries");
  }
}

UnionProbability union_probability(const EventSystem& ev) {
  validate(ev);
  double singles = 0.0;
  for (double p : ev.singles) singles += p;
  double overlaps = 0.0;
  double pair_unions = 0.0;
  for (std::size_t i = 0; i < ev.n; ++i) {
    for (std::size_t j = i + 1; j < ev.n; ++j) {
      const double overlap = ev.pair(i, j);
      overlaps += overlap;
      pair_unions += ev.singles[i] + ev.singles[j] - overlap;
    }
  }
  const double nd = static_cast<double>(ev.n);
  return {singles - overlaps, pair_unions - (nd - 2.0) * singles};
}

EventSystem quantum_event_system(const InvariantVector& v) {
  const std::size_t n = v.size();
  if (n < 2) throw Error(ErrorKind::TooFewPaths, "event system needs n >= 2");
  const PairKernel kernel{KernelBranch::Cosine, v.kappa};
  EventSystem ev;
  ev.n = n;
  ev.singles.assign(n, 1.0);
  ev.pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ev.pairs.push_back(2.0 - kernel_eval(kernel, v.phis[i] - v.phis[j]));
    }
  }
  return ev;
}

}  // namespace pathprob
