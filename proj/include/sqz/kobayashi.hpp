#pragma once

// Kobayashi distances on the convex balanced realisations handled by this
// toolkit, and distance-to-set evaluation by refinement sampling.
//
// Closed forms in use:
//   * from the origin of any balanced convex realisation:
//       K(0, w) = atanh(|w|)   with |.| the defining (spectral) norm
//   * on the Euclidean ball, between arbitrary interior points, via the
//     Moebius invariant
//       tanh^2 K(z,w) = 1 - (1-|z|^2)(1-|w|^2)/|1-<w,z>|^2
//   * on products, the max of the factor distances.
// Two-point distances on higher-rank factors are outside the supported
// class; all bound pipelines only need K(0, .) there.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sqz/symdomain.hpp"

namespace sqz::kob {

using dom::DomainSpec;
using jts::Complex;
using jts::Vec;

// A set removed from the ambient domain: a finite point cloud or a
// deterministic per-level sampler (parametric variety slice, compact set).
// Samplers are stateless per level so levels can run concurrently.
struct RemovedSet {
    enum class Kind { Points, Slice, Compact };

    Kind kind = Kind::Points;
    std::vector<Vec> points;  // Kind::Points
    // batch of fresh samples for refinement level l (cumulated by callers)
    std::function<std::vector<Vec>(int)> sampler;
    int levels = 4;
    std::string description;

    static RemovedSet finite(std::vector<Vec> pts);
    // the coordinate hyperplane z_coord = 0 intersected with the domain
    static RemovedSet coordinate_slice(const DomainSpec& domain, int coord, int base_samples,
                                       int levels = 4);
    // closed Euclidean ball around `center` (a compact subset of the domain)
    static RemovedSet closed_ball(const DomainSpec& domain, const Vec& center, double radius,
                                  int base_samples, int levels = 4);
};

// K(0, w) = atanh of the domain norm of w; w must be interior.
double dist_from_origin(const DomainSpec& domain, const Vec& w);

// Moebius distance on the Euclidean unit ball.
double ball_distance(const Vec& z, const Vec& w);

// Product formula: the max over factors of the factor distance.  Supported
// per factor: rank-one factors (balls, discs) for arbitrary endpoints, any
// factor when one endpoint is the factor origin.
double product_distance(const DomainSpec& domain, const Vec& z, const Vec& w);

// Decreasing sequence of upper estimates of K(z; S) = inf_{w in S} K(z,w).
struct DistanceEnvelope {
    std::vector<int> sample_counts;   // cumulative samples per level
    std::vector<double> estimates;    // nonincreasing upper estimates
    bool degenerate = false;          // z was in S up to tolerance

    double value() const { return estimates.empty() ? 0.0 : estimates.back(); }
};

DistanceEnvelope dist_to_set(const DomainSpec& domain, const Vec& z, const RemovedSet& set);

}  // namespace sqz::kob
