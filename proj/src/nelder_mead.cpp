#include "stylized/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stylized/errors.hpp"

namespace stylized {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
    std::vector<std::vector<double>> vertices;
    std::vector<double> values;
};

double safe_eval(const std::function<double(std::span<const double>)>& f, std::span<const double> x,
                 std::size_t& evaluations) {
    ++evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

// One Nelder-Mead run; returns true when the spread criterion was met.
bool run(const std::function<double(std::span<const double>)>& f, Simplex& s, const NelderMeadOptions& options,
         std::size_t budget, std::size_t& iterations, std::size_t& evaluations) {
    const std::size_t dim = s.vertices.size() - 1;
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);

    for (std::size_t it = 0; it < budget; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[dim - 1];

        if (std::isfinite(s.values[worst]) && s.values[worst] - s.values[best] < options.tolerance) return true;
        ++iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += s.vertices[i][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(dim);

        for (std::size_t j = 0; j < dim; ++j) trial[j] = centroid[j] + kReflect * (centroid[j] - s.vertices[worst][j]);
        const double reflected = safe_eval(f, trial, evaluations);

        if (reflected < s.values[best]) {
            for (std::size_t j = 0; j < dim; ++j) trial2[j] = centroid[j] + kExpand * (trial[j] - centroid[j]);
            const double expanded = safe_eval(f, trial2, evaluations);
            if (expanded < reflected) {
                s.vertices[worst] = trial2;
                s.values[worst] = expanded;
            } else {
                s.vertices[worst] = trial;
                s.values[worst] = reflected;
            }
            continue;
        }
        if (reflected < s.values[second]) {
            s.vertices[worst] = trial;
            s.values[worst] = reflected;
            continue;
        }

        // Contraction: outside if the reflection improved on the worst, inside otherwise.
        const bool outside = reflected < s.values[worst];
        const auto& toward = outside ? trial : s.vertices[worst];
        for (std::size_t j = 0; j < dim; ++j) trial2[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
        const double contracted = safe_eval(f, trial2, evaluations);
        if (contracted < (outside ? reflected : s.values[worst])) {
            s.vertices[worst] = trial2;
            s.values[worst] = contracted;
            continue;
        }

        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                s.vertices[i][j] = s.vertices[best][j] + kShrink * (s.vertices[i][j] - s.vertices[best][j]);
            }
            s.values[i] = safe_eval(f, s.vertices[i], evaluations);
        }
    }
    return false;
}

Simplex make_simplex(const std::function<double(std::span<const double>)>& f, std::span<const double> start,
                     std::span<const double> step, std::size_t& evaluations) {
    const std::size_t dim = start.size();
    Simplex s;
    s.vertices.assign(dim + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < dim; ++i) s.vertices[i + 1][i] += step[i];
    s.values.resize(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) s.values[i] = safe_eval(f, s.vertices[i], evaluations);
    return s;
}

std::size_t best_index(const Simplex& s) {
    return static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> start, std::span<const double> step,
                             const NelderMeadOptions& options) {
    if (start.empty() || step.size() != start.size()) {
        throw DomainError("nelder_mead needs a non-empty start and one step per coordinate");
    }
    NelderMeadResult result;
    Simplex s = make_simplex(f, start, step, result.evaluations);
    result.converged = run(f, s, options, options.max_iterations, result.iterations, result.evaluations);

    if (result.converged && options.restart && result.iterations < options.max_iterations) {
        const auto best = s.vertices[best_index(s)];
        Simplex fresh = make_simplex(f, best, step, result.evaluations);
        result.converged = run(f, fresh, options, options.max_iterations - result.iterations, result.iterations,
                               result.evaluations);
        if (fresh.values[best_index(fresh)] <= s.values[best_index(s)]) s = std::move(fresh);
    }

    const std::size_t b = best_index(s);
    result.x = s.vertices[b];
    result.value = s.values[b];
    return result;
}

}  // namespace stylized
