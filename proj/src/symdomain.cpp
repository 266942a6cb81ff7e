#include "sqz/symdomain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqz::dom {

namespace {

constexpr double kUnitEigenvalueGap = 1e-8;  // strata detection threshold

void require_point_dim(const DomainSpec& domain, const Vec& z, const char* op) {
    if (z.size() != domain.total_dim())
        throw StructuralError(std::string(op) + ": point has dimension " +
                              std::to_string(z.size()) + ", domain needs " +
                              std::to_string(domain.total_dim()));
}

}  // namespace

DomainSpec::DomainSpec(std::vector<CartanFactor> f)
    : DomainSpec(std::move(f), {}) {}

DomainSpec::DomainSpec(std::vector<CartanFactor> f, std::vector<double> s)
    : factors(std::move(f)), scales(std::move(s)) {
    if (factors.empty()) throw StructuralError("domain needs at least one factor");
    if (scales.empty()) scales.assign(factors.size(), 1.0);
    if (scales.size() != factors.size())
        throw StructuralError("domain scales must match the factor list");
    for (double s0 : scales)
        if (!(s0 > 0.0)) throw ArgumentError("domain scales must be positive");
}

int DomainSpec::rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank();
    return r;
}

int DomainSpec::total_dim() const {
    int d = 0;
    for (const auto& f : factors) d += f.ambient_dim();
    return d;
}

int DomainSpec::offset(int i) const {
    int d = 0;
    for (int k = 0; k < i; ++k) d += factors[static_cast<std::size_t>(k)].ambient_dim();
    return d;
}

Vec DomainSpec::slice(const Vec& z, int i) const {
    return z.segment(offset(i), factors[static_cast<std::size_t>(i)].ambient_dim());
}

DomainSpec DomainSpec::normalized() const {
    std::vector<double> s;
    s.reserve(factors.size());
    for (const auto& f : factors) s.push_back(1.0 / std::sqrt(static_cast<double>(f.rank())));
    return DomainSpec(factors, std::move(s));
}

std::string DomainSpec::name() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += factors[i].name();
    }
    return out;
}

RealizationScaling normalize_realization(const CartanFactor& factor) {
    const int r = factor.rank();
    return RealizationScaling{factor, 1.0 / std::sqrt(static_cast<double>(r)), r};
}

double domain_spectral_norm(const DomainSpec& domain, const Vec& z) {
    require_point_dim(domain, z, "domain_spectral_norm");
    double worst = 0.0;
    for (std::size_t i = 0; i < domain.factors.size(); ++i) {
        const JtsElement part(domain.factors[i],
                              Vec(domain.slice(z, static_cast<int>(i)) / domain.scales[i]));
        worst = std::max(worst, jts::spectral_norm(part));
    }
    return worst;
}

Region membership(const DomainSpec& domain, const Vec& z, double band) {
    const double norm = domain_spectral_norm(domain, z);
    if (norm < 1.0 - band) return Region::Interior;
    if (norm > 1.0 + band) return Region::Exterior;
    return Region::Boundary;
}

BoundaryStratum boundary_stratum(const DomainSpec& domain, const Vec& x, double tol) {
    if (!domain.irreducible())
        throw PreconditionError("boundary_stratum: domain must be a single irreducible factor");
    if (membership(domain, x) != Region::Boundary)
        throw PreconditionError("boundary_stratum: point is not on the boundary");
    const CartanFactor& f = domain.factors[0];
    const JtsElement y(f, Vec(x / domain.scales[0]));
    const auto dec = jts::spectral_decompose(y, std::min(tol, 1e-9));

    JtsElement e = JtsElement::zero(f);
    JtsElement v = JtsElement::zero(f);
    for (int i = 0; i < dec.size(); ++i) {
        if (dec.lambdas[i] >= 1.0 - kUnitEigenvalueGap)
            e = e + dec.tripotents[static_cast<std::size_t>(i)];
        else
            v = v + dec.tripotents[static_cast<std::size_t>(i)] * dec.lambdas[static_cast<std::size_t>(i)];
    }
    if (e.is_zero())
        throw InternalError("boundary_stratum: no unit spectral value on a boundary point");

    BoundaryStratum st{0, e, v, 0.0, 0.0, 0.0};
    st.j = jts::tripotent_rank(e);
    st.reconstruction_residual = (y - (e + v)).norm();
    st.v_spectral = jts::spectral_norm(v);

    // v must fall in the Pierce null space of e
    const auto pd = jts::pierce_decompose(e, std::max(tol, 1e-9));
    Vec off = v.coords();
    if (pd.basis0.cols() > 0) off -= pd.basis0 * (pd.basis0.adjoint() * v.coords());
    st.v0_residual = off.norm();
    if (st.v0_residual > std::max(tol, 1e-8) * (1.0 + v.norm()))
        throw InternalError("boundary_stratum: the bounded part is not in V_0(e)");
    if (st.v_spectral >= 1.0 - kUnitEigenvalueGap / 2.0)
        throw InternalError("boundary_stratum: the bounded part has unit spectral norm");
    return st;
}

bool shilov_membership(const DomainSpec& domain, const Vec& x, double tol) {
    return boundary_stratum(domain, x, tol).j == domain.rank();
}

std::vector<JtsElement> frame(const CartanFactor& factor) {
    std::vector<JtsElement> out;
    const int n = factor.rows();
    switch (factor.kind()) {
        case jts::FactorKind::TypeI:
        case jts::FactorKind::TypeIII: {
            for (int i = 0; i < factor.rank(); ++i) {
                Mat m = Mat::Zero(factor.rows(), factor.cols());
                m(i, i) = 1.0;
                out.push_back(JtsElement::from_matrix(factor, m));
            }
            break;
        }
        case jts::FactorKind::TypeII: {
            for (int k = 0; k < factor.rank(); ++k) {
                Mat m = Mat::Zero(n, n);
                m(2 * k, 2 * k + 1) = 1.0;
                m(2 * k + 1, 2 * k) = -1.0;
                out.push_back(JtsElement::from_matrix(factor, m));
            }
            break;
        }
        case jts::FactorKind::TypeIV: {
            // the canonical isotropic pair (eps1 +/- i eps2)/sqrt(2)
            Vec plus = Vec::Zero(n), minus = Vec::Zero(n);
            const double inv = 1.0 / std::sqrt(2.0);
            plus(0) = inv;
            plus(1) = Complex(0.0, inv);
            minus(0) = inv;
            minus(1) = Complex(0.0, -inv);
            out.emplace_back(factor, std::move(plus));
            out.emplace_back(factor, std::move(minus));
            break;
        }
    }
    return out;
}

Vec PolydiskEmbedding::operator()(const std::vector<Complex>& zeta) const {
    if (static_cast<int>(zeta.size()) != rank())
        throw ArgumentError("polydisk embedding expects " + std::to_string(rank()) +
                            " coordinates");
    Vec out = Vec::Zero(domain.total_dim());
    for (std::size_t j = 0; j < tripotents.size(); ++j) {
        const int fi = factor_of[j];
        const double s = domain.scales[static_cast<std::size_t>(fi)];
        out.segment(domain.offset(fi),
                    domain.factors[static_cast<std::size_t>(fi)].ambient_dim()) +=
            s * zeta[j] * tripotents[j].coords();
    }
    return out;
}

Vec PolydiskEmbedding::axis(int j, Complex zeta) const {
    std::vector<Complex> z(static_cast<std::size_t>(rank()), Complex(0.0, 0.0));
    z[static_cast<std::size_t>(j)] = zeta;
    return (*this)(z);
}

PolydiskEmbedding maximal_polydisk(const DomainSpec& domain) {
    PolydiskEmbedding emb{domain, {}, {}};
    for (std::size_t i = 0; i < domain.factors.size(); ++i) {
        for (auto& e : frame(domain.factors[i])) {
            emb.tripotents.push_back(std::move(e));
            emb.factor_of.push_back(static_cast<int>(i));
        }
    }
    return emb;
}

std::vector<Vec> sample_boundary(const CartanFactor& factor, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(count));
    const auto fr = frame(factor);
    const int r = factor.rank();

    for (int i = 0; i < count; ++i) {
        if (i % 64 < 2 && r >= 1) {
            // exact frame partial sums: a primitive tripotent (the nearest
            // boundary stratum) and the full frame sum (a Shilov point)
            JtsElement acc = JtsElement::zero(factor);
            const int upto = (i % 64 == 0) ? 1 : r;
            for (int k = 0; k < upto; ++k) acc = acc + fr[static_cast<std::size_t>(k)];
            out.push_back(acc.coords());
            continue;
        }
        const JtsElement g = jts::random_element(factor, rng);
        if (i % 2 == 0) {
            // radial projection of a Gaussian onto the boundary
            const double norm = jts::spectral_norm(g);
            if (norm <= 0.0) continue;
            out.push_back(Vec(g.coords() / norm));
            continue;
        }
        // synthetic stratum point e + t v with e a partial sum of the
        // spectral tripotents of g and v a bounded element of V_0(e)
        const auto dec = jts::spectral_decompose(g, 1e-9);
        if (dec.size() == 0) continue;
        const int j = rng.uniform_int(1, dec.size());
        JtsElement e = JtsElement::zero(factor);
        for (int k = 0; k < j; ++k) e = e + dec.tripotents[static_cast<std::size_t>(k)];
        const auto pd = jts::pierce_decompose(e, 1e-8);
        JtsElement v = JtsElement::zero(factor);
        if (pd.dims[0] > 0) {
            Vec coeff(pd.dims[0]);
            for (int k = 0; k < pd.dims[0]; ++k) coeff(k) = rng.complex_gaussian();
            v = JtsElement(factor, Vec(pd.basis0 * coeff));
            const double vn = jts::spectral_norm(v);
            if (vn > 0.0) v = v * (rng.uniform(0.0, 0.999) / vn);
        }
        out.push_back((e + v).coords());
    }
    return out;
}

}  // namespace sqz::dom
