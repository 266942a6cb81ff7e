#include "sqz/squeezing.hpp"

#include <algorithm>
#include <cmath>

namespace sqz::sqf {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

SqueezeBound exact_constant(const DomainSpec& domain) {
    const int r = domain.rank();
    const double value = 1.0 / std::sqrt(static_cast<double>(r));
    SqueezeBound b;
    b.lower = b.upper = value;
    b.exact = true;
    b.provenance.push_back("squeezing constant 1/sqrt(rank) of the bounded symmetric domain " +
                           domain.name() + ", rank " + std::to_string(r));
    if (!domain.irreducible())
        b.provenance.push_back("rank additivity over " + std::to_string(domain.factors.size()) +
                               " factors; product lower bound matches the polydisk upper bound");
    return b;
}

double product_lower_bound(const std::vector<double>& parts) {
    if (parts.empty()) throw ArgumentError("product_lower_bound: empty factor list");
    double acc = 0.0;
    for (double s : parts) {
        if (!(s > 0.0) || s > 1.0)
            throw ArgumentError("product_lower_bound: factor values must lie in (0, 1]");
        acc += 1.0 / (s * s);
    }
    return 1.0 / std::sqrt(acc);
}

Interval aux_conversion(double value, int rank, AuxDirection) {
    if (!(value > 0.0) || value > 1.0)
        throw ArgumentError("aux_conversion: value must lie in (0, 1]");
    if (rank < 1) throw ArgumentError("aux_conversion: rank must be >= 1");
    const double root = std::sqrt(static_cast<double>(rank));
    // the confinement interval has the same shape in both directions
    return Interval{value / root, std::min(1.0, value * root)};
}

SqueezeBound removed_set_bounds(const DomainSpec& domain, const Vec& z,
                                const kob::RemovedSet& set) {
    if (!domain.irreducible())
        throw PreconditionError("removed_set_bounds: the ambient domain must be irreducible");
    const int r = domain.rank();
    const auto env = kob::dist_to_set(domain, z, set);

    SqueezeBound b;
    if (env.degenerate) {
        b.lower = b.upper = 0.0;
        b.exact = false;
        b.provenance.push_back("degenerate: the base point lies in the removed set");
        return b;
    }
    const double k_hat = env.value();
    const double t = std::tanh(k_hat);
    b.upper = t;
    b.lower = t / std::sqrt(static_cast<double>(r));
    b.exact = (r == 1);
    b.provenance.push_back("two-sided removed-set estimate on " + domain.name() + " minus " +
                           set.description);
    b.provenance.push_back("hypotheses (caller-asserted): the removed set is a proper analytic "
                           "subvariety, or a compact set with connected complement");
    b.provenance.push_back("distance envelope K^ = " + fmt(k_hat) + " after " +
                           std::to_string(env.estimates.size()) + " refinement levels (" +
                           std::to_string(env.sample_counts.empty() ? 0 : env.sample_counts.back()) +
                           " samples); K^ >= K, so both sides are approached from above");
    if (b.exact)
        b.provenance.push_back("rank-one ambient domain: s(z) = tanh(K(z;S)) exactly");
    return b;
}

std::vector<ExclusionDiagnostic> product_exclusion(double s_value,
                                                   const ExclusionHypotheses& hyp) {
    if (!(s_value > 0.0) || s_value > 1.0)
        throw ArgumentError("product_exclusion: the squeezing value must lie in (0, 1]");
    std::vector<ExclusionDiagnostic> out;
    const int n = hyp.dim;
    auto echo = [&](char part, int m) {
        ExclusionDiagnostic d;
        d.part = part;
        d.m = m;
        d.threshold = 1.0 / std::sqrt(static_cast<double>(m));
        const std::string hyps = std::string(hyp.contractible ? "contractible, " : "") +
                                 (hyp.pseudoconvex ? "pseudoconvex" : "") + ", dim " +
                                 std::to_string(n) + " (caller-asserted)";
        if (part == 'a')
            d.statement = "(a): not biholomorphic to a product of " + std::to_string(m) +
                          " or more irreducible factors [s = " + fmt(s_value) + " > 1/sqrt(" +
                          std::to_string(m) + "); " + hyps + "]";
        else
            d.statement = "(b): not biholomorphic to a product of " + std::to_string(m) +
                          " factors of dimension >= 2 [s = " + fmt(s_value) + " > 1/sqrt(" +
                          std::to_string(m) + "); " + hyps + "]";
        out.push_back(std::move(d));
    };
    if (hyp.contractible && hyp.pseudoconvex) {
        for (int m = 2; m <= n; ++m)
            if (s_value > 1.0 / std::sqrt(static_cast<double>(m))) echo('a', m);
    }
    if (hyp.pseudoconvex && n >= 4) {
        for (int m = 2; 2 * m <= n; ++m)
            if (s_value > 1.0 / std::sqrt(static_cast<double>(m))) echo('b', m);
    }
    return out;
}

// ---- Hardy certificate ---------------------------------------------------------

HardyCertificate hardy_certificate(const EmbeddingMap& F, const std::vector<DiscMap>& discs,
                                   double R, int samples,
                                   const std::vector<double>& rho_schedule) {
    if (!is_power_of_two(samples) || samples < 4)
        throw ArgumentError("hardy_certificate: samples must be a power of two (>= 4)");
    if (discs.empty()) throw ArgumentError("hardy_certificate: needs at least one disc");
    if (!(R > 0.0) || R > 1.0)
        throw ArgumentError("hardy_certificate: R must lie in (0, 1]");
    if (rho_schedule.empty()) throw ArgumentError("hardy_certificate: empty radius schedule");
    for (double rho : rho_schedule)
        if (!(rho > 0.0) || rho >= 1.0)
            throw ArgumentError("hardy_certificate: radii must lie in (0, 1)");

    const int p = static_cast<int>(discs.size());
    HardyCertificate cert;
    cert.p = p;
    cert.R = R;
    cert.samples = samples;
    cert.rho_schedule = rho_schedule;
    cert.conclusion = 1.0 / std::sqrt(static_cast<double>(p));

    std::string failure;

    // centre condition: every disc passes through the common base point and
    // F sends it to 0
    for (int j = 0; j < p; ++j) {
        const Vec center = F(discs[static_cast<std::size_t>(j)](Complex(0.0, 0.0)));
        if (center.norm() > 1e-8) {
            failure = "disc " + std::to_string(j) + " is not centred: |F(phi_j(0))| = " +
                      fmt(center.norm());
            break;
        }
    }

    for (double rho : rho_schedule) {
        HardyStage stage;
        stage.rho = rho;
        stage.slack = (1.0 - rho * rho) + 10.0 / samples;
        stage.total_mass = 0.0;
        for (int j = 0; j < p && failure.empty(); ++j) {
            // discrete Parseval on the circle of radius rho: the mean of
            // |g|^2 equals the aliased coefficient mass; the mean of g
            // recovers the constant term, which the mass must exclude
            double mean_sq = 0.0;
            Vec mean = Vec();
            for (int k = 0; k < samples; ++k) {
                const Complex zeta = std::polar(rho, 2.0 * M_PI * k / samples);
                const Vec g = F(discs[static_cast<std::size_t>(j)](zeta));
                const double norm = g.norm();
                if (norm >= 1.0) {
                    failure = "the embedding left the unit ball on disc " + std::to_string(j) +
                              " (|g| = " + fmt(norm) + " at rho = " + fmt(rho) + ")";
                    break;
                }
                if (mean.size() == 0) mean = Vec::Zero(g.size());
                mean_sq += norm * norm;
                mean += g;
            }
            if (!failure.empty()) break;
            mean_sq /= samples;
            mean /= samples;
            const double mass = mean_sq - mean.squaredNorm();
            stage.per_disc_mass.push_back(mass);
            stage.total_mass += mass;
        }
        if (!failure.empty()) break;
        cert.stages.push_back(std::move(stage));
    }

    if (failure.empty()) {
        const HardyStage& last = cert.stages.back();
        cert.per_disc_mass = last.per_disc_mass;
        cert.total_mass = last.total_mass;
        cert.slack = last.slack;
        for (int j = 0; j < p; ++j) {
            if (last.per_disc_mass[static_cast<std::size_t>(j)] < R * R * (1.0 - last.slack)) {
                failure = "per-disc mass " + fmt(last.per_disc_mass[static_cast<std::size_t>(j)]) +
                          " of disc " + std::to_string(j) + " falls below R^2 (1 - slack); " +
                          "B(0,R) inside F(D) is implausible for R = " + fmt(R);
                break;
            }
        }
        if (failure.empty() && last.total_mass > 1.0 + last.slack)
            failure = "total axis mass " + fmt(last.total_mass) +
                      " exceeds the Hardy bound 1 beyond slack";
        if (failure.empty() &&
            p * R * R > last.total_mass + last.slack * std::max(1.0, p * R * R))
            failure = "chain p R^2 <= total mass fails beyond slack (p R^2 = " + fmt(p * R * R) +
                      ", total = " + fmt(last.total_mass) + ")";
    }

    cert.chain_ok = failure.empty();
    cert.failure = failure;
    cert.provenance.push_back(
        "Hardy-coefficient upper bound: p R^2 <= sum of axis masses <= 1 certifies s <= 1/sqrt(p)");
    cert.provenance.push_back(
        "boundary radii approach 1 from below; masses are nondecreasing in rho, so each stage "
        "is a certified lower approximation of the boundary mass");
    cert.provenance.push_back("cluster condition of the discs is an asserted hypothesis of the "
                              "caller, not verified numerically");
    return cert;
}

HardyCertificate domain_certificate(const DomainSpec& domain, double R, int samples) {
    const auto emb = dom::maximal_polydisk(domain);
    const int m = static_cast<int>(domain.factors.size());

    if (R < 0.0) {
        double r_min = 1.0;
        for (const auto& f : domain.factors)
            r_min = std::min(r_min, 1.0 / std::sqrt(static_cast<double>(m * f.rank())));
        R = r_min;
    }

    // normalised embedding into the Euclidean ball: each factor is scaled
    // onto its normalised realisation, the product is compressed by sqrt(m)
    const DomainSpec dom_copy = domain;
    EmbeddingMap F = [dom_copy, m](const Vec& z) {
        Vec out(z.size());
        for (std::size_t i = 0; i < dom_copy.factors.size(); ++i) {
            const double s = dom_copy.scales[i] *
                             std::sqrt(static_cast<double>(dom_copy.factors[i].rank() * m));
            out.segment(dom_copy.offset(static_cast<int>(i)),
                        dom_copy.factors[i].ambient_dim()) =
                dom_copy.slice(z, static_cast<int>(i)) / s;
        }
        return out;
    };

    std::vector<DiscMap> discs;
    for (int j = 0; j < emb.rank(); ++j)
        discs.push_back([emb, j](Complex zeta) { return emb.axis(j, zeta); });

    auto cert = hardy_certificate(F, discs, R, samples);
    cert.provenance.push_back("discs: maximal-polydisk axes of " + domain.name() +
                              " (boundary discs cluster on the domain boundary)");
    cert.provenance.push_back("embedding: normalised realisation into the Euclidean ball, R = " +
                              fmt(R));
    return cert;
}

}  // namespace sqz::sqf
