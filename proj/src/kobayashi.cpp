#include "sqz/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqz::kob {

namespace {

constexpr double kInteriorBand = 1e-10;

// radical-inverse (van der Corput) sequence in the given prime base
double radical_inverse(std::uint64_t index, unsigned base) {
    double result = 0.0;
    double digit = 1.0 / base;
    while (index > 0) {
        result += digit * static_cast<double>(index % base);
        index /= base;
        digit /= base;
    }
    return result;
}

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

// Halton point in [0,1)^dims
std::vector<double> halton(std::uint64_t index, int dims) {
    std::vector<double> out(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; ++d)
        out[static_cast<std::size_t>(d)] = radical_inverse(index + 1, kPrimes[d % 24]);
    return out;
}

// refinement level l draws Halton indices [begin_l, end_l), quadrupling widths
std::pair<std::uint64_t, std::uint64_t> attempt_range(int level, int base) {
    std::uint64_t begin = 0, width = static_cast<std::uint64_t>(base);
    for (int l = 0; l < level; ++l) {
        begin += width;
        width *= 4;
    }
    return {begin, begin + width};
}

double factor_euclid_bound(const DomainSpec& domain, int i) {
    return domain.scales[static_cast<std::size_t>(i)] *
           std::sqrt(static_cast<double>(domain.factors[static_cast<std::size_t>(i)].rank()));
}

}  // namespace

RemovedSet RemovedSet::finite(std::vector<Vec> pts) {
    if (pts.empty()) throw ArgumentError("removed set needs at least one point");
    RemovedSet s;
    s.kind = Kind::Points;
    s.points = std::move(pts);
    s.levels = 1;
    s.description = "finite point cloud (" + std::to_string(s.points.size()) + " points)";
    return s;
}

RemovedSet RemovedSet::coordinate_slice(const DomainSpec& domain, int coord, int base_samples,
                                        int levels) {
    const int n = domain.total_dim();
    if (coord < 0 || coord >= n) throw ArgumentError("slice coordinate out of range");
    if (base_samples < 1 || levels < 1) throw ArgumentError("slice sampler needs positive budget");

    // per-coordinate Euclidean bound of the domain, used as the sampling box
    std::vector<double> bound(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < domain.factors.size(); ++i) {
        const double b = factor_euclid_bound(domain, static_cast<int>(i));
        for (int k = 0; k < domain.factors[i].ambient_dim(); ++k)
            bound[static_cast<std::size_t>(domain.offset(static_cast<int>(i)) + k)] = b;
    }

    RemovedSet s;
    s.kind = Kind::Slice;
    s.levels = levels;
    s.description = "coordinate slice z_" + std::to_string(coord + 1) + " = 0";
    s.sampler = [domain, coord, base_samples, bound, n](int level) {
        std::vector<Vec> out;
        auto [begin, end] = attempt_range(level, base_samples);
        const int free_dims = 2 * (n - 1);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const auto h = halton(idx, free_dims);
            Vec p = Vec::Zero(n);
            int d = 0;
            for (int k = 0; k < n; ++k) {
                if (k == coord) continue;
                const double b = bound[static_cast<std::size_t>(k)];
                const double re = (2.0 * h[static_cast<std::size_t>(d++)] - 1.0) * b;
                const double im = (2.0 * h[static_cast<std::size_t>(d++)] - 1.0) * b;
                p(k) = Complex(re, im);
            }
            if (dom::membership(domain, p, kInteriorBand) == dom::Region::Interior)
                out.push_back(std::move(p));
        }
        return out;
    };
    return s;
}

RemovedSet RemovedSet::closed_ball(const DomainSpec& domain, const Vec& center, double radius,
                                   int base_samples, int levels) {
    if (center.size() != domain.total_dim())
        throw StructuralError("removed ball center has the wrong dimension");
    if (!(radius > 0.0)) throw ArgumentError("removed ball needs a positive radius");
    if (base_samples < 1 || levels < 1) throw ArgumentError("ball sampler needs positive budget");
    const int n = domain.total_dim();

    RemovedSet s;
    s.kind = Kind::Compact;
    s.levels = levels;
    s.description = "closed ball of radius " + std::to_string(radius);
    s.sampler = [domain, center, radius, base_samples, n](int level) {
        std::vector<Vec> out;
        auto [begin, end] = attempt_range(level, base_samples);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const auto h = halton(idx, 2 * n);
            Vec p = center;
            double norm2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double re = (2.0 * h[static_cast<std::size_t>(2 * k)] - 1.0) * radius;
                const double im = (2.0 * h[static_cast<std::size_t>(2 * k + 1)] - 1.0) * radius;
                p(k) += Complex(re, im);
                norm2 += re * re + im * im;
            }
            if (norm2 > radius * radius) continue;
            if (dom::membership(domain, p, kInteriorBand) == dom::Region::Interior)
                out.push_back(std::move(p));
        }
        return out;
    };
    return s;
}

double dist_from_origin(const DomainSpec& domain, const Vec& w) {
    if (dom::membership(domain, w, kInteriorBand) != dom::Region::Interior)
        throw ArgumentError("dist_from_origin: point is not in the interior");
    return std::atanh(dom::domain_spectral_norm(domain, w));
}

double ball_distance(const Vec& z, const Vec& w) {
    if (z.size() != w.size()) throw StructuralError("ball_distance: dimension mismatch");
    const double nz2 = z.squaredNorm();
    const double nw2 = w.squaredNorm();
    if (nz2 >= 1.0 || nw2 >= 1.0)
        throw PreconditionError("ball_distance: points must lie in the open unit ball");
    const Complex inner = z.dot(w);  // <w, z> = sum w_k conj(z_k)
    const double denom = std::norm(Complex(1.0, 0.0) - inner);
    const double t2 = std::max(1.0 - (1.0 - nz2) * (1.0 - nw2) / denom, 0.0);
    return std::atanh(std::sqrt(t2));
}

double product_distance(const DomainSpec& domain, const Vec& z, const Vec& w) {
    if (dom::membership(domain, z, kInteriorBand) != dom::Region::Interior ||
        dom::membership(domain, w, kInteriorBand) != dom::Region::Interior)
        throw PreconditionError("product_distance: endpoints must be interior points");
    double dist = 0.0;
    for (std::size_t i = 0; i < domain.factors.size(); ++i) {
        const double s = domain.scales[i];
        const Vec zi = domain.slice(z, static_cast<int>(i)) / s;
        const Vec wi = domain.slice(w, static_cast<int>(i)) / s;
        double di = 0.0;
        if (domain.factors[i].rank() == 1) {
            // rank-one factors are Euclidean balls in packed coordinates
            di = ball_distance(zi, wi);
        } else if (zi.norm() == 0.0 || wi.norm() == 0.0) {
            const jts::JtsElement other(domain.factors[i], zi.norm() == 0.0 ? wi : zi);
            di = std::atanh(jts::spectral_norm(other));
        } else {
            throw UnsupportedError(
                "product_distance: two-point distance on a higher-rank factor (" +
                domain.factors[i].name() + ") is only available from the factor origin");
        }
        dist = std::max(dist, di);
    }
    return dist;
}

DistanceEnvelope dist_to_set(const DomainSpec& domain, const Vec& z, const RemovedSet& set) {
    if (dom::membership(domain, z, kInteriorBand) != dom::Region::Interior)
        throw PreconditionError("dist_to_set: base point is not interior");

    DistanceEnvelope env;
    double best = std::numeric_limits<double>::infinity();
    int seen = 0;
    const double coincide = 1e-12 * (1.0 + z.norm());

    auto absorb = [&](const std::vector<Vec>& pts) {
        for (const auto& p : pts) {
            if (set.kind == RemovedSet::Kind::Points &&
                dom::membership(domain, p, kInteriorBand) != dom::Region::Interior)
                throw StructuralError("dist_to_set: removed-set point is not interior");
            ++seen;
            if ((p - z).norm() <= coincide) {
                env.degenerate = true;
                continue;
            }
            best = std::min(best, product_distance(domain, z, p));
        }
    };

    for (int level = 0; level < set.levels; ++level) {
        if (set.kind == RemovedSet::Kind::Points) {
            if (level == 0) absorb(set.points);
        } else {
            absorb(set.sampler(level));
        }
        env.sample_counts.push_back(seen);
        env.estimates.push_back(env.degenerate ? 0.0 : best);
    }
    if (!env.degenerate && !std::isfinite(best))
        throw ArgumentError("dist_to_set: the sampler produced no admissible points");
    if (env.degenerate) std::fill(env.estimates.begin(), env.estimates.end(), 0.0);
    return env;
}

}  // namespace sqz::kob
