#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stylized {

struct NelderMeadOptions {
    /// Stop once max f - min f over the simplex falls below this.
    double tolerance = 1e-8;
    std::size_t max_iterations = 2000;
    /// Restart from the best vertex with a fresh simplex after the first convergence,
    /// which guards against a collapsed simplex reporting false convergence.
    bool restart = true;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Minimizes `f` from `start`, with initial simplex vertices start + step[i] * e_i.
/// Non-finite objective values are treated as +infinity.
[[nodiscard]] NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                                           std::span<const double> start, std::span<const double> step,
                                           const NelderMeadOptions& options = {});

}  // namespace stylized
