#pragma once

// Bounded symmetric domains realised as spectral-norm unit balls of finite
// products of Cartan factors.  A DomainSpec also carries one positive scale
// per factor: the domain is { z : |z_i / scale_i| < 1 for all i } where
// |.| is the factor's spectral norm.  With every scale equal to 1 this is
// the convex balanced unit-ball realisation; scales 1/sqrt(rank_i) give the
// normalised realisation in which the Shilov boundary sits at Euclidean
// distance 1 and dist(0, boundary) = 1/sqrt(rank_i) per factor.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sqz/phjts.hpp"

namespace sqz::dom {

using jts::CartanFactor;
using jts::Complex;
using jts::JtsElement;
using jts::Mat;
using jts::Vec;

enum class Region { Interior, Boundary, Exterior };

struct DomainSpec {
    std::vector<CartanFactor> factors;
    std::vector<double> scales;  // one per factor, all positive

    explicit DomainSpec(std::vector<CartanFactor> f);
    DomainSpec(std::vector<CartanFactor> f, std::vector<double> s);

    int rank() const;       // sum of factor ranks
    int total_dim() const;  // sum of ambient dimensions
    int offset(int i) const;
    Vec slice(const Vec& z, int i) const;
    bool irreducible() const { return factors.size() == 1; }
    // copy with every factor rescaled to its normalised realisation
    DomainSpec normalized() const;
    std::string name() const;
};

// Scaling map onto the normalised realisation of one irreducible factor:
// x -> scale * x with scale = 1/sqrt(rank) in the packed coordinates (these
// are already orthonormal for the invariant inner product).
struct RealizationScaling {
    CartanFactor factor;
    double scale;
    int rank;
};
RealizationScaling normalize_realization(const CartanFactor& factor);

// max_i |z_i / scale_i| over the factors
double domain_spectral_norm(const DomainSpec& domain, const Vec& z);

Region membership(const DomainSpec& domain, const Vec& z, double band = 1e-10);

// Boundary point split x/scale = e + v with e the unit-eigenvalue tripotent
// part (rank j) and v in V_0(e), |v| < 1.  Components are reported in the
// unit-ball coordinates of the factor (i.e. after dividing by the scale).
struct BoundaryStratum {
    int j;
    JtsElement e;
    JtsElement v;
    double reconstruction_residual;
    double v0_residual;   // norm of the part of v outside V_0(e)
    double v_spectral;    // |v| in the factor's spectral norm
};

BoundaryStratum boundary_stratum(const DomainSpec& domain, const Vec& x, double tol);

bool shilov_membership(const DomainSpec& domain, const Vec& x, double tol);

// The canonical frame: rank-many mutually orthogonal primitive tripotents.
std::vector<JtsElement> frame(const CartanFactor& factor);

// Totally geodesic polydisk embedding phi(zeta) = sum_j zeta_j e_j over the
// concatenated frames of all factors (scaled per factor), with
// |phi(zeta)|_domain = max_j |zeta_j|.
struct PolydiskEmbedding {
    DomainSpec domain;
    std::vector<JtsElement> tripotents;
    std::vector<int> factor_of;  // factor index of each frame tripotent

    int rank() const { return static_cast<int>(tripotents.size()); }
    Vec operator()(const std::vector<Complex>& zeta) const;
    // phi(zeta * epsilon_j): the j-th axis disc
    Vec axis(int j, Complex zeta) const;
};

PolydiskEmbedding maximal_polydisk(const DomainSpec& domain);

// Deterministic boundary sampler in unit-ball coordinates: a mixture of
// Gaussian points projected onto the boundary and synthetic stratum points
// e + t v built from random spectral tripotents (includes exact frame
// partial sums, so the extremal strata are always represented).
std::vector<Vec> sample_boundary(const CartanFactor& factor, int count, std::uint64_t seed);

}  // namespace sqz::dom
