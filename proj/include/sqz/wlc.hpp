#pragma once

// Squeezing lower bounds for bounded convex bodies in C^n via special
// coordinates.  From a base point z0 the pipeline picks successive boundary
// contacts a^1..a^n along shrinking orthogonal complex slices, maps the
// contact directions onto the coordinate axes (unitary U, diagonal scaling
// by the contact distances), and solves for the unique lower-triangular
// unit-diagonal map A sending each supporting complex hyperplane onto
// {Z_j = 1}.  The transformed body contains c D^n for an explicitly
// computable c > 0, which certifies s(z0) >= c / (16 sqrt(n)) through the
// Koebe quarter theorem.
//
// Convex bodies are the supported input class: the supporting hyperplane at
// a contact point is read off the active halfspace constraint.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqz/errors.hpp"
#include "sqz/rng.hpp"

namespace sqz::wlc {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Bounded convex domain { x : Re<x, nu_k> < b_k } in C^n, with <x, nu> the
// Hermitian pairing (linear in x).  Construction validates that the stated
// interior point is strictly feasible and that the normals positively span
// R^{2n} (so the body is bounded).
class ConvexBody {
public:
    ConvexBody(std::vector<Vec> normals, std::vector<double> offsets, Vec interior_point);

    int dim() const { return static_cast<int>(interior_point_.size()); }
    int constraint_count() const { return static_cast<int>(normals_.size()); }
    const std::vector<Vec>& normals() const { return normals_; }
    const std::vector<double>& offsets() const { return offsets_; }
    const Vec& interior_point() const { return interior_point_; }

    // min_k (b_k - Re<x, nu_k>); positive inside, negative outside
    double margin(const Vec& x) const;
    bool contains(const Vec& x, double tol = 0.0) const { return margin(x) >= -tol; }

    // the affine image t * body + shift (t > 0)
    ConvexBody transformed(double t, const Vec& shift) const;

private:
    std::vector<Vec> normals_;
    std::vector<double> offsets_;
    Vec interior_point_;
};

// Per-coordinate regular m-gon circumscribing the unit polydisk D^n.
ConvexBody polydisk_body(int n, int gon = 64);

// Polyhedral approximation of the Euclidean unit ball of C^n: per-coordinate
// m-gon normals, the diagonal two-phase family (which makes the inscribed
// polydisk radius exact), and seeded random unit normals.
ConvexBody ball_body(int n, int gon = 32, int diag_grid = 16, int random_normals = 1024,
                     std::uint64_t seed = 7);

struct SliceDistance {
    double r;      // distance from z0 to the boundary within the slice
    Vec contact;   // the touching point on the slice boundary
    int active;    // index of the active constraint (lowest on ties)
};

// Largest complex-ball radius inside the body within the affine slice
// z0 + span(H); H must have orthonormal columns.
SliceDistance subspace_boundary_distance(const ConvexBody& body, const Vec& z0, const Mat& H);

struct WlcFrame {
    Vec z0;
    std::vector<Vec> contacts;      // a^1 .. a^n
    std::vector<double> distances;  // |a^j - z0|
    std::vector<int> active;        // chosen supporting constraint per contact
    Mat U;                          // unitary: U(a^j - z0) = d_j eps_j
    Mat A;                          // lower triangular, unit diagonal
    double c = 0.0;                 // inscribed polydisk radius of the image
    double bound = 0.0;             // c / (16 sqrt(n))
    double hyperplane_residual = 0.0;
    double orthogonality_residual = 0.0;
    double contact_residual = 0.0;
    bool cross_polytope_inside = false;  // support-function check of the
                                         // |Z_1|+...+|Z_n| < 1 inclusion
    std::vector<std::string> provenance;

    // the full frame map A * diag(1/d_j) * U
    Mat transform() const;
};

WlcFrame build_frame(const ConvexBody& body, const Vec& z0);

// Exact inscribed polydisk radius of a halfspace-represented body around 0:
// min_k b_k / sum_i |nu_{k,i}|.  All offsets must be positive.
double inscribed_polydisk_radius(const std::vector<Vec>& normals,
                                 const std::vector<double>& offsets);

double koebe_lower_bound(const WlcFrame& frame);

// Deterministic strictly-interior sample points (ray-scaled from the body's
// interior point).
std::vector<Vec> interior_grid(const ConvexBody& body, int count, std::uint64_t seed);

// min over the grid of the per-point Koebe bound; a sampled lower bound for
// inf_z s(z) > 0.
double hhr_scan(const ConvexBody& body, const std::vector<Vec>& grid, int threads = 1);

}  // namespace sqz::wlc
