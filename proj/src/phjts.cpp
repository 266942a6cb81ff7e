#include "sqz/phjts.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sqz::jts {

namespace {

constexpr double kGroupingGap = 1e-8;  // relative gap merging spectral values

std::string kind_letter(FactorKind kind) {
    switch (kind) {
        case FactorKind::TypeI: return "I";
        case FactorKind::TypeII: return "II";
        case FactorKind::TypeIII: return "III";
        case FactorKind::TypeIV: return "IV";
    }
    return "?";
}

}  // namespace

// ---- CartanFactor -------------------------------------------------------------

CartanFactor CartanFactor::type_i(int p, int q) {
    if (p < 1 || q < 1) throw ArgumentError("type I factor needs p, q >= 1");
    if (p > q) throw ArgumentError("type I factor needs p <= q");
    return CartanFactor(FactorKind::TypeI, p, q);
}

CartanFactor CartanFactor::type_ii(int n) {
    if (n < 1) throw ArgumentError("type II factor needs n >= 1");
    if (n < 2) throw ArgumentError("type II factor of size 1 has dimension 0");
    return CartanFactor(FactorKind::TypeII, n, n);
}

CartanFactor CartanFactor::type_iii(int n) {
    if (n < 1) throw ArgumentError("type III factor needs n >= 1");
    return CartanFactor(FactorKind::TypeIII, n, n);
}

CartanFactor CartanFactor::type_iv(int n) {
    if (n < 2) throw ArgumentError("type IV factor needs n >= 2");
    return CartanFactor(FactorKind::TypeIV, n, 1);
}

int CartanFactor::rows() const { return p_; }

int CartanFactor::cols() const {
    return kind_ == FactorKind::TypeIV ? 1 : q_;
}

int CartanFactor::ambient_dim() const {
    switch (kind_) {
        case FactorKind::TypeI: return p_ * q_;
        case FactorKind::TypeII: return p_ * (p_ - 1) / 2;
        case FactorKind::TypeIII: return p_ * (p_ + 1) / 2;
        case FactorKind::TypeIV: return p_;
    }
    return 0;
}

int CartanFactor::rank() const {
    switch (kind_) {
        case FactorKind::TypeI: return std::min(p_, q_);
        case FactorKind::TypeII: return p_ / 2;
        case FactorKind::TypeIII: return p_;
        case FactorKind::TypeIV: return 2;
    }
    return 0;
}

std::string CartanFactor::name() const {
    if (kind_ == FactorKind::TypeI)
        return "I(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
    return kind_letter(kind_) + "(" + std::to_string(p_) + ")";
}

// ---- packing -------------------------------------------------------------------

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Packs an unpacked carrier matrix into coordinates orthonormal for the
// invariant form.  Types II/III are projected onto their symmetry class, so
// the stored element satisfies the class constraint exactly.
Vec pack(const CartanFactor& f, const Mat& m) {
    const int n = f.rows();
    Vec out(f.ambient_dim());
    switch (f.kind()) {
        case FactorKind::TypeI: {
            int k = 0;
            for (int i = 0; i < f.rows(); ++i)
                for (int j = 0; j < f.cols(); ++j) out(k++) = m(i, j);
            return out;
        }
        case FactorKind::TypeII: {
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) out(k++) = 0.5 * (m(i, j) - m(j, i));
            return out;
        }
        case FactorKind::TypeIII: {
            int k = 0;
            for (int i = 0; i < n; ++i) out(k++) = m(i, i);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) out(k++) = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
            return out;
        }
        case FactorKind::TypeIV:
            return m.col(0);
    }
    return out;
}

Mat unpack(const CartanFactor& f, const Vec& c) {
    const int n = f.rows();
    switch (f.kind()) {
        case FactorKind::TypeI: {
            Mat m(f.rows(), f.cols());
            int k = 0;
            for (int i = 0; i < f.rows(); ++i)
                for (int j = 0; j < f.cols(); ++j) m(i, j) = c(k++);
            return m;
        }
        case FactorKind::TypeII: {
            Mat m = Mat::Zero(n, n);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    m(i, j) = c(k);
                    m(j, i) = -c(k);
                    ++k;
                }
            return m;
        }
        case FactorKind::TypeIII: {
            Mat m = Mat::Zero(n, n);
            int k = 0;
            for (int i = 0; i < n; ++i) m(i, i) = c(k++);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    m(i, j) = c(k) / kSqrt2;
                    m(j, i) = m(i, j);
                    ++k;
                }
            return m;
        }
        case FactorKind::TypeIV:
            return c;
    }
    return {};
}

void require_same_factor(const JtsElement& a, const JtsElement& b, const char* op) {
    if (a.factor() != b.factor())
        throw StructuralError(std::string(op) + ": factor mismatch (" + a.factor().name() +
                              " vs " + b.factor().name() + ")");
}

void require_finite(const Vec& c, const char* op) {
    if (!c.allFinite()) throw ArgumentError(std::string(op) + ": non-finite coordinates");
}

// <a,b> = sum_k a_k conj(b_k)
Complex hermitian(const Vec& a, const Vec& b) { return b.dot(a); }

// bilinear form a.b = sum_k a_k b_k
Complex bilinear(const Vec& a, const Vec& b) { return (a.array() * b.array()).sum(); }

}  // namespace

// ---- JtsElement ----------------------------------------------------------------

JtsElement::JtsElement(CartanFactor factor, Vec coords)
    : factor_(factor), coords_(std::move(coords)) {
    if (coords_.size() != factor_.ambient_dim())
        throw StructuralError("element coordinates have length " +
                              std::to_string(coords_.size()) + ", expected " +
                              std::to_string(factor_.ambient_dim()) + " for " + factor_.name());
}

JtsElement JtsElement::zero(const CartanFactor& factor) {
    return JtsElement(factor, Vec::Zero(factor.ambient_dim()));
}

JtsElement JtsElement::basis(const CartanFactor& factor, int k) {
    if (k < 0 || k >= factor.ambient_dim()) throw ArgumentError("basis index out of range");
    Vec c = Vec::Zero(factor.ambient_dim());
    c(k) = 1.0;
    return JtsElement(factor, std::move(c));
}

JtsElement JtsElement::from_matrix(const CartanFactor& factor, const Mat& m) {
    if (m.rows() != factor.rows() || m.cols() != factor.cols())
        throw StructuralError("matrix shape " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + " does not match " + factor.name());
    const double scale = 1.0 + m.norm();
    if (factor.kind() == FactorKind::TypeII) {
        if ((m + m.transpose()).norm() > 1e-12 * scale)
            throw StructuralError("type II element must be antisymmetric");
    } else if (factor.kind() == FactorKind::TypeIII) {
        if ((m - m.transpose()).norm() > 1e-12 * scale)
            throw StructuralError("type III element must be symmetric");
    }
    return JtsElement(factor, pack(factor, m));
}

Mat JtsElement::to_matrix() const { return unpack(factor_, coords_); }

JtsElement JtsElement::operator+(const JtsElement& other) const {
    require_same_factor(*this, other, "operator+");
    return JtsElement(factor_, coords_ + other.coords_);
}

JtsElement JtsElement::operator-(const JtsElement& other) const {
    require_same_factor(*this, other, "operator-");
    return JtsElement(factor_, coords_ - other.coords_);
}

JtsElement JtsElement::operator*(Complex scalar) const {
    return JtsElement(factor_, Vec(coords_ * scalar));
}

// ---- triple product -------------------------------------------------------------

JtsElement triple_product(const JtsElement& x, const JtsElement& y, const JtsElement& z) {
    require_same_factor(x, y, "triple_product");
    require_same_factor(x, z, "triple_product");
    const CartanFactor& f = x.factor();
    if (f.kind() == FactorKind::TypeIV) {
        const Vec& a = x.coords();
        const Vec& b = y.coords();
        const Vec& c = z.coords();
        Vec out = hermitian(a, b) * c + hermitian(c, b) * a - bilinear(a, c) * b.conjugate();
        return JtsElement(f, std::move(out));
    }
    const Mat a = x.to_matrix();
    const Mat b = y.to_matrix();
    const Mat c = z.to_matrix();
    const Mat bh = b.adjoint();
    Mat out = a * bh * c + c * bh * a;
    // pack() re-projects onto the symmetry class, killing rounding drift
    return JtsElement(f, pack(f, out));
}

JtsElement quadratic_map(const JtsElement& x, const JtsElement& y) {
    return triple_product(x, y, x) * 0.5;
}

JtsElement odd_power(const JtsElement& x, int k) {
    if (k < 1 || k % 2 == 0) throw ArgumentError("odd_power: exponent must be odd and positive");
    JtsElement r = x;
    for (int step = 0; step < (k - 1) / 2; ++step) r = quadratic_map(x, r);
    return r;
}

bool is_tripotent(const JtsElement& x, double tol) {
    if (tol <= 0.0) throw ArgumentError("is_tripotent: tol must be positive");
    return (odd_power(x, 3) - x).norm() <= tol;
}

// ---- spectral theory ------------------------------------------------------------

namespace {

// Spin-factor spectral data.  Rotating the bilinear invariant q = x.x onto
// the positive axis splits x into orthogonal real and imaginary parts u, v
// with |u| >= |v|; the spectral values are (|u| +- |v|)/sqrt(2).  This route
// avoids the cancellation in sqrt(h^2 - |q|^2) near the locus |q| = h where
// the rank-two tripotents live.
struct SpinSplit {
    Complex half_phase;      // e^{i arg(q)/2}
    Eigen::VectorXd u, v;    // real and imaginary parts of e^{-i arg(q)/2} x
    double nu, nv;           // their norms, nu >= nv up to rounding
    double lambda_plus, lambda_minus;
};

SpinSplit spin_split(const Vec& c) {
    SpinSplit s;
    const Complex q = (c.array() * c.array()).sum();
    const double phi = (q == Complex(0.0, 0.0)) ? 0.0 : std::arg(q);
    s.half_phase = std::polar(1.0, phi / 2.0);
    const Vec y = c * std::conj(s.half_phase);
    s.u = y.real();
    s.v = y.imag();
    s.nu = s.u.norm();
    s.nv = s.v.norm();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.lambda_plus = (s.nu + s.nv) * inv_sqrt2;
    s.lambda_minus = std::max((s.nu - s.nv) * inv_sqrt2, 0.0);
    return s;
}

}  // namespace

double spectral_norm(const JtsElement& x) {
    if (x.is_zero()) return 0.0;
    const CartanFactor& f = x.factor();
    if (f.kind() == FactorKind::TypeIV) return spin_split(x.coords()).lambda_plus;
    Eigen::JacobiSVD<Mat> svd(x.to_matrix());
    return svd.singularValues()(0);
}

namespace {

// Greedy grouping of a descending singular-value list: a new group starts
// when the gap to the previous value exceeds kGroupingGap relative to the
// largest value.  Values at or below `drop` are discarded.
std::vector<std::pair<int, int>> group_spectrum(const Eigen::VectorXd& sv, double drop) {
    std::vector<std::pair<int, int>> groups;  // [begin, end)
    const int n = static_cast<int>(sv.size());
    if (n == 0) return groups;
    const double gap = kGroupingGap * sv(0);
    int begin = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || sv(i - 1) - sv(i) > gap) {
            groups.emplace_back(begin, i);
            begin = i;
        }
    }
    std::vector<std::pair<int, int>> kept;
    for (auto [b, e] : groups) {
        double mean = 0.0;
        for (int i = b; i < e; ++i) mean += sv(i);
        mean /= (e - b);
        if (mean > drop) kept.emplace_back(b, e);
    }
    return kept;
}

SpectralDecomposition decompose_matrix_kind(const JtsElement& x, double tol) {
    const CartanFactor& f = x.factor();
    Eigen::JacobiSVD<Mat> svd(x.to_matrix(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double drop = std::max(tol, 1e-13 * sv(0));

    SpectralDecomposition dec;
    for (auto [b, e] : group_spectrum(sv, drop)) {
        double lambda = 0.0;
        for (int i = b; i < e; ++i) lambda += sv(i);
        lambda /= (e - b);
        const Mat uj = svd.matrixU().middleCols(b, e - b);
        const Mat vj = svd.matrixV().middleCols(b, e - b);
        // partial isometry of the group; pack() restores exact (anti)symmetry
        Mat ej = uj * vj.adjoint();
        dec.lambdas.push_back(lambda);
        dec.tripotents.push_back(JtsElement(f, pack(f, ej)));
    }
    return dec;
}

SpectralDecomposition decompose_spin(const JtsElement& x, double tol) {
    const CartanFactor& f = x.factor();
    const Vec& c = x.coords();
    const SpinSplit s = spin_split(c);
    const double lp = s.lambda_plus;
    const double lm = s.lambda_minus;
    const double drop = std::max(tol, 1e-13 * lp);

    SpectralDecomposition dec;
    if (lp <= drop) return dec;

    if (lp - lm <= kGroupingGap * lp) {
        // the two spectral values coincide: x is a multiple of a rank-two
        // tripotent (a unimodular phase times a real vector)
        const double lambda = 0.5 * (lp + lm);
        dec.lambdas.push_back(lambda);
        dec.tripotents.push_back(JtsElement(f, Vec(c / lambda)));
        return dec;
    }
    if (lm <= drop) {
        // isotropic direction: x is (nearly) a multiple of a primitive tripotent
        dec.lambdas.push_back(lp);
        dec.tripotents.push_back(JtsElement(f, Vec(c / lp)));
        return dec;
    }
    Vec eplus(f.ambient_dim()), eminus(f.ambient_dim());
    for (int i = 0; i < f.ambient_dim(); ++i) {
        const Complex up(s.u(i) / s.nu, s.v(i) / s.nv);
        const Complex um(s.u(i) / s.nu, -s.v(i) / s.nv);
        eplus(i) = s.half_phase * up / kSqrt2;
        eminus(i) = s.half_phase * um / kSqrt2;
    }
    dec.lambdas = {lp, lm};
    dec.tripotents.emplace_back(f, std::move(eplus));
    dec.tripotents.emplace_back(f, std::move(eminus));
    return dec;
}

}  // namespace

SpectralDecomposition spectral_decompose(const JtsElement& x, double tol) {
    require_finite(x.coords(), "spectral_decompose");
    if (tol <= 0.0) throw ArgumentError("spectral_decompose: tol must be positive");
    if (x.is_zero()) return SpectralDecomposition{};

    SpectralDecomposition dec = x.factor().kind() == FactorKind::TypeIV
                                    ? decompose_spin(x, tol)
                                    : decompose_matrix_kind(x, tol);

    Vec recon = Vec::Zero(x.factor().ambient_dim());
    for (int i = 0; i < dec.size(); ++i) recon += dec.lambdas[i] * dec.tripotents[i].coords();
    dec.residual = (x.coords() - recon).norm();

    const double budget = tol * (1.0 + x.factor().rank() + x.norm());
    if (dec.residual > budget)
        throw InternalError("spectral_decompose: reconstruction residual " +
                            std::to_string(dec.residual) + " exceeds tolerance budget");
    for (int i = 1; i < dec.size(); ++i)
        if (dec.lambdas[i - 1] <= dec.lambdas[i])
            throw InternalError("spectral_decompose: spectral values not strictly decreasing");
    return dec;
}

PierceDecomposition pierce_decompose(const JtsElement& e, double tol) {
    if (tol <= 0.0) throw ArgumentError("pierce_decompose: tol must be positive");
    const CartanFactor& f = e.factor();
    const int dim = f.ambient_dim();

    if (e.is_zero()) {
        PierceDecomposition dec{e, Mat::Identity(dim, dim), Mat(dim, 0), Mat(dim, 0), {dim, 0, 0}, 0.0};
        return dec;
    }
    if (!is_tripotent(e, std::max(tol, 1e-10)))
        throw PreconditionError("pierce_decompose: input is not a tripotent");

    Mat op = d_operator_matrix(e, e);
    const Mat herm = 0.5 * (op + op.adjoint());
    if ((op - herm).norm() > 1e-10 * (1.0 + op.norm()))
        throw InternalError("pierce_decompose: D(e,e) is not self-adjoint");

    Eigen::SelfAdjointEigenSolver<Mat> eig(herm);
    const Eigen::VectorXd vals = eig.eigenvalues();
    const Mat vecs = eig.eigenvectors();

    PierceDecomposition dec{e, Mat(dim, 0), Mat(dim, 0), Mat(dim, 0), {0, 0, 0}, 0.0};
    std::array<std::vector<int>, 3> members;
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        const int nearest = std::clamp(static_cast<int>(std::lround(vals(i))), 0, 2);
        worst = std::max(worst, std::abs(vals(i) - nearest));
        members[static_cast<std::size_t>(nearest)].push_back(i);
    }
    if (worst > tol)
        throw InternalError("pierce_decompose: eigenvalue of D(e,e) deviates from {0,1,2} by " +
                            std::to_string(worst));
    dec.eigenvalue_residual = worst;

    auto collect = [&](const std::vector<int>& idx) {
        Mat block(dim, static_cast<int>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) block.col(static_cast<int>(c)) = vecs.col(idx[c]);
        return block;
    };
    dec.basis0 = collect(members[0]);
    dec.basis1 = collect(members[1]);
    dec.basis2 = collect(members[2]);
    dec.dims = {static_cast<int>(members[0].size()), static_cast<int>(members[1].size()),
                static_cast<int>(members[2].size())};

    // multiplication rule spot check: {V_a, V_b, V_c} lies in V_{a-b+c}
    const std::array<const Mat*, 3> blocks{&dec.basis0, &dec.basis1, &dec.basis2};
    const double rule_tol = 100.0 * std::max(tol, 1e-12);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                if (blocks[a]->cols() == 0 || blocks[b]->cols() == 0 || blocks[c]->cols() == 0)
                    continue;
                const JtsElement xa(f, blocks[a]->col(0));
                const JtsElement xb(f, blocks[b]->col(0));
                const JtsElement xc(f, blocks[c]->col(0));
                const Vec t = triple_product(xa, xb, xc).coords();
                const int target = a - b + c;
                Vec off = t;
                if (target >= 0 && target <= 2 && blocks[target]->cols() > 0) {
                    const Mat& basis = *blocks[target];
                    off = t - basis * (basis.adjoint() * t);
                }
                if (off.norm() > rule_tol * (1.0 + t.norm()))
                    throw InternalError("pierce_decompose: multiplication rule violated for (" +
                                        std::to_string(a) + "," + std::to_string(b) + "," +
                                        std::to_string(c) + ")");
            }
    return dec;
}

bool are_orthogonal(const JtsElement& e1, const JtsElement& e2, double tol) {
    require_same_factor(e1, e2, "are_orthogonal");
    if (!is_tripotent(e1, std::max(tol, 1e-10)) || !is_tripotent(e2, std::max(tol, 1e-10)))
        throw PreconditionError("are_orthogonal: both inputs must be tripotents");
    return d_operator_norm(e1, e2) <= tol;
}

bool dominates(const JtsElement& e, const JtsElement& eprime, double tol) {
    require_same_factor(e, eprime, "dominates");
    const double trip_tol = std::max(tol, 1e-10);
    if (!is_tripotent(e, trip_tol) || !is_tripotent(eprime, trip_tol))
        throw PreconditionError("dominates: both inputs must be tripotents");
    const JtsElement diff = eprime - e;
    if (!is_tripotent(diff, trip_tol)) return false;
    return d_operator_norm(e, diff) <= tol;
}

int tripotent_rank(const JtsElement& e) {
    if (e.is_zero()) throw ArgumentError("tripotent_rank: zero input");
    if (!is_tripotent(e, 1e-8)) throw ArgumentError("tripotent_rank: input is not a tripotent");
    const CartanFactor& f = e.factor();
    int r = 0;
    if (f.kind() == FactorKind::TypeIV) {
        const double h = e.coords().squaredNorm();
        const double q = std::abs(bilinear(e.coords(), e.coords()));
        // primitive tripotents are isotropic (q = 0), maximal ones have q = h
        r = q <= 0.5 * h ? 1 : 2;
        if (std::abs(h - r) > 1e-6)
            throw InternalError("tripotent_rank: invariant norm inconsistent with spin rank");
    } else {
        Eigen::JacobiSVD<Mat> svd(e.to_matrix());
        const Eigen::VectorXd sv = svd.singularValues();
        int matrix_rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 0.5) ++matrix_rank;
        if (f.kind() == FactorKind::TypeII) {
            // singular values of an antisymmetric partial isometry pair up
            if (matrix_rank % 2 != 0)
                throw InternalError("tripotent_rank: odd matrix rank for a type II tripotent");
            r = matrix_rank / 2;
        } else {
            r = matrix_rank;
        }
    }
    if (r < 1 || r > f.rank())
        throw InternalError("tripotent_rank: rank " + std::to_string(r) + " outside [1," +
                            std::to_string(f.rank()) + "]");
    return r;
}

int system_rank(const CartanFactor& factor, int trials, std::uint64_t seed) {
    if (trials < 1) throw ArgumentError("system_rank: trials must be >= 1");
    Rng rng(seed);
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        const JtsElement x = random_element(factor, rng);
        best = std::max(best, spectral_decompose(x, 1e-9).size());
    }
    return best;
}

// ---- helpers --------------------------------------------------------------------

Mat d_operator_matrix(const JtsElement& x, const JtsElement& y) {
    require_same_factor(x, y, "d_operator_matrix");
    const int dim = x.factor().ambient_dim();
    Mat op(dim, dim);
    for (int k = 0; k < dim; ++k)
        op.col(k) = triple_product(x, y, JtsElement::basis(x.factor(), k)).coords();
    return op;
}

double d_operator_norm(const JtsElement& x, const JtsElement& y) {
    Eigen::JacobiSVD<Mat> svd(d_operator_matrix(x, y));
    return svd.singularValues()(0);
}

JtsElement random_element(const CartanFactor& factor, Rng& rng) {
    Vec c(factor.ambient_dim());
    for (int i = 0; i < factor.ambient_dim(); ++i) c(i) = rng.complex_gaussian();
    return JtsElement(factor, std::move(c));
}

double jordan_residual(const JtsElement& x, const JtsElement& y, const JtsElement& u,
                       const JtsElement& v, const JtsElement& w) {
    const JtsElement lhs1 = triple_product(x, y, triple_product(u, v, w));
    const JtsElement lhs2 = triple_product(triple_product(x, y, u), v, w);
    const JtsElement rhs1 = triple_product(u, v, triple_product(x, y, w));
    const JtsElement rhs2 = triple_product(u, triple_product(y, x, v), w);
    return (lhs1 - lhs2 - rhs1 + rhs2).norm();
}

}  // namespace sqz::jts
