#include "sqz/wlc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/QR>

namespace sqz::wlc {

namespace {

Eigen::VectorXd realvec(const Vec& z) {
    Eigen::VectorXd out(2 * z.size());
    for (int i = 0; i < z.size(); ++i) {
        out(2 * i) = z(i).real();
        out(2 * i + 1) = z(i).imag();
    }
    return out;
}

// Lawson-Hanson nonnegative least squares: min |N t - c| over t >= 0.
// Returns the residual norm.  N has one column per generator.
double nnls_residual(const Eigen::MatrixXd& gens, const Eigen::VectorXd& c) {
    const int d = static_cast<int>(gens.rows());
    const int k = static_cast<int>(gens.cols());
    Eigen::VectorXd t = Eigen::VectorXd::Zero(k);
    std::vector<int> passive;
    Eigen::VectorXd resid = c;

    const int max_outer = 4 * d + 16;
    for (int outer = 0; outer < max_outer; ++outer) {
        const Eigen::VectorXd w = gens.transpose() * resid;
        int best = -1;
        double best_w = 1e-12;
        for (int j = 0; j < k; ++j) {
            if (std::find(passive.begin(), passive.end(), j) != passive.end()) continue;
            if (w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) break;
        passive.push_back(best);

        for (int inner = 0; inner < 2 * d + 8; ++inner) {
            Eigen::MatrixXd sub(d, static_cast<int>(passive.size()));
            for (std::size_t c2 = 0; c2 < passive.size(); ++c2)
                sub.col(static_cast<int>(c2)) = gens.col(passive[c2]);
            const Eigen::VectorXd s = sub.colPivHouseholderQr().solve(c);
            if (s.minCoeff() > 1e-12) {
                t.setZero();
                for (std::size_t c2 = 0; c2 < passive.size(); ++c2) t(passive[c2]) = s(c2);
                break;
            }
            // step back to the feasible boundary and drop vanished entries
            double alpha = 1.0;
            for (std::size_t c2 = 0; c2 < passive.size(); ++c2) {
                if (s(static_cast<int>(c2)) <= 1e-12) {
                    const double ti = t(passive[c2]);
                    const double den = ti - s(static_cast<int>(c2));
                    if (den > 0.0) alpha = std::min(alpha, ti / den);
                }
            }
            std::vector<int> kept;
            for (std::size_t c2 = 0; c2 < passive.size(); ++c2) {
                const int j = passive[c2];
                t(j) += alpha * (s(static_cast<int>(c2)) - t(j));
                if (t(j) > 1e-12) kept.push_back(j);
                else t(j) = 0.0;
            }
            passive = std::move(kept);
            if (passive.empty()) break;
        }
        resid = c - gens * t;
        if (resid.norm() < 1e-10) break;
    }
    return (c - gens * t).norm();
}

}  // namespace

// ---- ConvexBody -----------------------------------------------------------------

ConvexBody::ConvexBody(std::vector<Vec> normals, std::vector<double> offsets, Vec interior_point)
    : normals_(std::move(normals)), offsets_(std::move(offsets)),
      interior_point_(std::move(interior_point)) {
    if (normals_.empty()) throw StructuralError("convex body needs at least one halfspace");
    if (normals_.size() != offsets_.size())
        throw StructuralError("convex body: normals and offsets differ in length");
    const int n = static_cast<int>(interior_point_.size());
    if (n < 1) throw StructuralError("convex body: empty interior point");
    for (const auto& nu : normals_) {
        if (nu.size() != n) throw StructuralError("convex body: normal of wrong dimension");
        if (nu.norm() == 0.0) throw StructuralError("convex body: zero normal");
    }
    if (margin(interior_point_) <= 1e-10)
        throw StructuralError("convex body: interior point is not strictly feasible");

    // boundedness: every +/- coordinate direction of R^{2n} must lie in the
    // cone of the (vectorised) normals
    Eigen::MatrixXd gens(2 * n, static_cast<int>(normals_.size()));
    for (std::size_t kcol = 0; kcol < normals_.size(); ++kcol) {
        const Eigen::VectorXd g = realvec(normals_[kcol]);
        gens.col(static_cast<int>(kcol)) = g / g.norm();
    }
    for (int d = 0; d < 2 * n; ++d) {
        for (double sign : {1.0, -1.0}) {
            Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n);
            c(d) = sign;
            if (nnls_residual(gens, c) > 1e-6)
                throw StructuralError(
                    "convex body: normals do not positively span, the body is unbounded");
        }
    }
}

double ConvexBody::margin(const Vec& x) const {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < normals_.size(); ++k) {
        const double re = x.dot(normals_[k]).real();  // Re <x, nu_k>
        worst = std::min(worst, offsets_[k] - re);
    }
    return worst;
}

ConvexBody ConvexBody::transformed(double t, const Vec& shift) const {
    if (!(t > 0.0)) throw ArgumentError("convex body scaling must be positive");
    if (shift.size() != dim()) throw StructuralError("convex body shift of wrong dimension");
    std::vector<double> off(offsets_.size());
    for (std::size_t k = 0; k < offsets_.size(); ++k)
        off[k] = t * offsets_[k] + shift.dot(normals_[k]).real();
    return ConvexBody(normals_, std::move(off), Vec(t * interior_point_ + shift));
}

ConvexBody polydisk_body(int n, int gon) {
    if (n < 1 || gon < 3) throw ArgumentError("polydisk body needs n >= 1 and gon >= 3");
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < gon; ++t) {
            Vec nu = Vec::Zero(n);
            nu(j) = std::polar(1.0, 2.0 * M_PI * t / gon);
            normals.push_back(std::move(nu));
            offsets.push_back(1.0);
        }
    return ConvexBody(std::move(normals), std::move(offsets), Vec(Vec::Zero(n)));
}

ConvexBody ball_body(int n, int gon, int diag_grid, int random_normals, std::uint64_t seed) {
    if (n < 1 || gon < 3) throw ArgumentError("ball body needs n >= 1 and gon >= 3");
    std::vector<Vec> normals;
    std::vector<double> offsets;
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < gon; ++t) {
            Vec nu = Vec::Zero(n);
            nu(j) = std::polar(1.0, 2.0 * M_PI * t / gon);
            normals.push_back(std::move(nu));
            offsets.push_back(1.0);
        }
    // two-coordinate phase family; touches the sphere where the inscribed
    // polydisk corner sits, making its radius exact
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int a = 0; a < diag_grid; ++a)
                for (int b = 0; b < diag_grid; ++b) {
                    Vec nu = Vec::Zero(n);
                    nu(i) = std::polar(inv_sqrt2, 2.0 * M_PI * a / diag_grid);
                    nu(j) = std::polar(inv_sqrt2, 2.0 * M_PI * b / diag_grid);
                    normals.push_back(std::move(nu));
                    offsets.push_back(1.0);
                }
    Rng rng(seed);
    for (int t = 0; t < random_normals; ++t) {
        Vec nu(n);
        for (int i = 0; i < n; ++i) nu(i) = rng.complex_gaussian();
        const double norm = nu.norm();
        if (norm < 1e-6) continue;
        normals.push_back(Vec(nu / norm));
        offsets.push_back(1.0);
    }
    return ConvexBody(std::move(normals), std::move(offsets), Vec(Vec::Zero(n)));
}

// ---- frame construction -----------------------------------------------------------

SliceDistance subspace_boundary_distance(const ConvexBody& body, const Vec& z0, const Mat& H) {
    if (z0.size() != body.dim()) throw StructuralError("base point of wrong dimension");
    if (body.margin(z0) <= 0.0)
        throw PreconditionError("subspace_boundary_distance: base point is not interior");
    if (H.rows() != body.dim() || H.cols() < 1 ||
        (H.adjoint() * H - Mat::Identity(H.cols(), H.cols())).norm() > 1e-10)
        throw ArgumentError("subspace_boundary_distance: H must have orthonormal columns");

    // distances per constraint; entries within a relative tie tolerance of
    // the minimum count as ties, resolved towards the lowest index
    std::vector<double> dist(static_cast<std::size_t>(body.constraint_count()),
                             std::numeric_limits<double>::infinity());
    double r_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < body.constraint_count(); ++k) {
        const Vec& nu = body.normals()[static_cast<std::size_t>(k)];
        const Vec proj = H * (H.adjoint() * nu);
        const double pn = proj.norm();
        if (pn <= 1e-14 * (1.0 + nu.norm())) continue;  // constraint parallel to the slice
        const double r = (body.offsets()[static_cast<std::size_t>(k)] - z0.dot(nu).real()) / pn;
        dist[static_cast<std::size_t>(k)] = r;
        r_min = std::min(r_min, r);
    }
    if (!std::isfinite(r_min))
        throw InternalError("subspace_boundary_distance: every constraint is parallel to the slice");

    SliceDistance out{0.0, Vec(), -1};
    const double tie = 1e-9 * (1.0 + std::abs(r_min));
    for (int k = 0; k < body.constraint_count(); ++k) {
        if (dist[static_cast<std::size_t>(k)] <= r_min + tie) {
            out.active = k;
            out.r = dist[static_cast<std::size_t>(k)];
            break;
        }
    }
    const Vec& nu = body.normals()[static_cast<std::size_t>(out.active)];
    const Vec proj = H * (H.adjoint() * nu);
    out.contact = z0 + out.r * proj / proj.norm();
    return out;
}

Mat WlcFrame::transform() const {
    const int n = static_cast<int>(distances.size());
    Mat scale = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) scale(j, j) = 1.0 / distances[static_cast<std::size_t>(j)];
    return A * scale * U;
}

WlcFrame build_frame(const ConvexBody& body, const Vec& z0) {
    const int n = body.dim();
    if (z0.size() != n) throw StructuralError("build_frame: base point of wrong dimension");
    if (body.margin(z0) <= 0.0) throw PreconditionError("build_frame: base point is not interior");

    WlcFrame frame;
    frame.z0 = z0;
    Mat u_cols(n, 0);
    Mat h_cur = Mat::Identity(n, n);

    for (int j = 0; j < n; ++j) {
        const auto sd = subspace_boundary_distance(body, z0, h_cur);
        frame.contacts.push_back(sd.contact);
        frame.distances.push_back(sd.r);
        frame.active.push_back(sd.active);

        Vec u = (sd.contact - z0) / sd.r;
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < u_cols.cols(); ++i) u -= u_cols.col(i).dot(u) * u_cols.col(i);
        u /= u.norm();
        u_cols.conservativeResize(n, j + 1);
        u_cols.col(j) = u;

        if (j + 1 < n) {
            // orthonormal complement of the contact directions found so far
            const Mat q = Eigen::HouseholderQR<Mat>(u_cols).householderQ();
            h_cur = q.rightCols(n - j - 1);
        }
    }

    frame.U = u_cols.adjoint();
    frame.orthogonality_residual =
        (frame.U * frame.U.adjoint() - Mat::Identity(n, n)).cwiseAbs().maxCoeff();

    double contact_res = 0.0;
    for (int j = 0; j < n; ++j) {
        const int k = frame.active[static_cast<std::size_t>(j)];
        const Vec& nu = body.normals()[static_cast<std::size_t>(k)];
        contact_res = std::max(contact_res,
                               std::abs(body.offsets()[static_cast<std::size_t>(k)] -
                                        frame.contacts[static_cast<std::size_t>(j)].dot(nu).real()));
    }
    frame.contact_residual = contact_res;

    // row j of A aligns the transformed supporting hyperplane of a^j with
    // {Z_j = 1}; with mu_j = diag(d) U nu_j the raw row is conj(mu_j)/conj(mu_jj),
    // and the entries beyond the diagonal vanish up to rounding
    frame.A = Mat::Identity(n, n);
    double hyp_res = 0.0;
    for (int j = 0; j < n; ++j) {
        const Vec& nu = body.normals()[static_cast<std::size_t>(frame.active[static_cast<std::size_t>(j)])];
        Vec mu = frame.U * nu;
        for (int i = 0; i < n; ++i) mu(i) *= frame.distances[static_cast<std::size_t>(i)];
        const Complex pivot = mu(j);
        if (std::abs(pivot) < 1e-13)
            throw InternalError("build_frame: vanishing pivot in the triangular solve");
        double off_mass = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k < j)
                frame.A(j, k) = std::conj(mu(k)) / std::conj(pivot);
            else if (k > j)
                off_mass += std::abs(mu(k));
        }
        hyp_res = std::max(hyp_res, off_mass / std::abs(pivot));
    }

    // contact mapping residual: M(a^j - z0) must have j-th coordinate 1
    const Mat m = frame.transform();
    for (int j = 0; j < n; ++j) {
        const Vec img = m * (frame.contacts[static_cast<std::size_t>(j)] - z0);
        hyp_res = std::max(hyp_res, std::abs(img(j) - Complex(1.0, 0.0)));
    }
    frame.hyperplane_residual = hyp_res;

    // transformed halfspace data: normals (M^dagger)^{-1} nu, offsets shifted to z0
    std::vector<Vec> tnormals;
    std::vector<double> toffsets;
    bool cross_ok = true;
    for (int k = 0; k < body.constraint_count(); ++k) {
        const Vec& nu = body.normals()[static_cast<std::size_t>(k)];
        const double b = body.offsets()[static_cast<std::size_t>(k)] - z0.dot(nu).real();
        Vec mu = frame.U * nu;
        for (int i = 0; i < n; ++i) mu(i) *= frame.distances[static_cast<std::size_t>(i)];
        // cross-polytope support check in the pre-A coordinates
        if (mu.cwiseAbs().maxCoeff() > b + 1e-9) cross_ok = false;
        tnormals.push_back(frame.A.adjoint().triangularView<Eigen::Upper>().solve(mu));
        toffsets.push_back(b);
    }
    frame.cross_polytope_inside = cross_ok;
    frame.c = inscribed_polydisk_radius(tnormals, toffsets);
    frame.bound = frame.c / (16.0 * std::sqrt(static_cast<double>(n)));
    frame.provenance.push_back(
        "special-coordinate frame: the transformed body contains c D^n with c = " +
        std::to_string(frame.c));
    frame.provenance.push_back(
        "Koebe quarter argument certifies s(z0) >= c/(16 sqrt(n)) for bounded convex bodies "
        "(slice-connectedness and contractibility hold automatically)");
    return frame;
}

double inscribed_polydisk_radius(const std::vector<Vec>& normals,
                                 const std::vector<double>& offsets) {
    if (normals.empty() || normals.size() != offsets.size())
        throw StructuralError("inscribed_polydisk_radius: malformed halfspace data");
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < normals.size(); ++k) {
        if (offsets[k] <= 0.0)
            throw ArgumentError("inscribed_polydisk_radius: the origin is not interior");
        const double support = normals[k].cwiseAbs().sum();  // support of D^n at nu
        if (support <= 0.0) continue;
        c = std::min(c, offsets[k] / support);
    }
    if (!std::isfinite(c))
        throw InternalError("inscribed_polydisk_radius: no effective constraints");
    return c;
}

double koebe_lower_bound(const WlcFrame& frame) { return frame.bound; }

std::vector<Vec> interior_grid(const ConvexBody& body, int count, std::uint64_t seed) {
    if (count < 1) throw ArgumentError("interior_grid: count must be positive");
    Rng rng(seed);
    const int n = body.dim();
    const Vec& base = body.interior_point();
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Vec dir(n);
        for (int i = 0; i < n; ++i) dir(i) = rng.complex_gaussian();
        const double dn = dir.norm();
        if (dn < 1e-9) continue;
        dir /= dn;
        // exact ray-boundary distance from the interior point
        double reach = std::numeric_limits<double>::infinity();
        for (int k = 0; k < body.constraint_count(); ++k) {
            const Vec& nu = body.normals()[static_cast<std::size_t>(k)];
            const double dir_side = dir.dot(nu).real();
            if (dir_side <= 0.0) continue;
            reach = std::min(reach,
                             (body.offsets()[static_cast<std::size_t>(k)] - base.dot(nu).real()) /
                                 dir_side);
        }
        if (!std::isfinite(reach)) throw InternalError("interior_grid: unbounded ray");
        const double t = 0.95 * std::pow(rng.uniform(), 1.0 / (2.0 * n));
        out.push_back(Vec(base + t * reach * dir));
    }
    return out;
}

double hhr_scan(const ConvexBody& body, const std::vector<Vec>& grid, int threads) {
    if (grid.empty()) throw ArgumentError("hhr_scan: empty grid");
    for (const auto& z : grid)
        if (body.margin(z) <= 0.0)
            throw ArgumentError("hhr_scan: grid point outside the body");

    const int workers =
        std::clamp(threads, 1, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    std::vector<double> mins(static_cast<std::size_t>(workers),
                             std::numeric_limits<double>::infinity());
    auto run = [&](int w) {
        for (std::size_t i = static_cast<std::size_t>(w); i < grid.size();
             i += static_cast<std::size_t>(workers))
            mins[static_cast<std::size_t>(w)] =
                std::min(mins[static_cast<std::size_t>(w)], build_frame(body, grid[i]).bound);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    return *std::min_element(mins.begin(), mins.end());
}

}  // namespace sqz::wlc
