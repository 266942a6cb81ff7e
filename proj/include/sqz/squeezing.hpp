#pragma once

// Squeezing-function values and certified bounds for bounded symmetric
// domains and sets removed from them.
//
//   * exact constant 1/sqrt(rank) for any finite product of Cartan factors
//   * the product combinator s >= (sum 1/s_i^2)^(-1/2)
//   * the two-sided removed-set estimate
//       tanh(K(z;S))/sqrt(rank) <= s(z) <= tanh(K(z;S)),
//     with equality on rank-one domains
//   * conversion between the unit-ball squeezing function and the auxiliary
//     one measured against a normalised realisation:
//       s/sqrt(r) <= s_aux <= sqrt(r) s
//   * product-exclusion diagnostics from a squeezing value above 1/sqrt(m)
//   * a numerical certificate of the upper bound 1/sqrt(p) from Hardy-space
//     coefficient masses of p analytic discs whose boundaries cluster on
//     the domain boundary.

#include <functional>
#include <string>
#include <vector>

#include "sqz/kobayashi.hpp"
#include "sqz/symdomain.hpp"

namespace sqz::sqf {

using dom::DomainSpec;
using jts::Complex;
using jts::Vec;

struct SqueezeBound {
    double lower = 0.0;
    double upper = 1.0;
    bool exact = false;  // lower and upper agree by a theorem
    std::vector<std::string> provenance;
};

// s = 1/sqrt(sum of factor ranks); exact for every bounded symmetric domain.
SqueezeBound exact_constant(const DomainSpec& domain);

// (sum_i 1/s_i^2)^(-1/2); every s_i must lie in (0, 1].
double product_lower_bound(const std::vector<double>& parts);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};
enum class AuxDirection { StdToAux, AuxToStd };

// The interval the other squeezing function is confined to, given one value
// and the rank of the normalised reference realisation.
Interval aux_conversion(double value, int rank, AuxDirection direction);

// Two-sided bounds for Omega \ S at z, from the distance envelope K(z;S).
// The envelope estimates K from above, so both reported sides are
// approached from above as the sampler refines; this is recorded in the
// provenance.  Exact on rank-one domains.
SqueezeBound removed_set_bounds(const DomainSpec& domain, const Vec& z,
                                const kob::RemovedSet& set);

struct ExclusionHypotheses {
    bool contractible = false;
    bool pseudoconvex = false;
    int dim = 2;  // complex dimension n >= 2
};

struct ExclusionDiagnostic {
    char part;         // 'a' or 'b'
    int m;             // number of factors excluded
    double threshold;  // 1/sqrt(m)
    std::string statement;
};

// Diagnostics implied by s(z) = s_value > 1/sqrt(m).  The hypotheses are
// caller-asserted metadata and are echoed, never verified.
std::vector<ExclusionDiagnostic> product_exclusion(double s_value,
                                                   const ExclusionHypotheses& hypotheses);

// ---- Hardy-coefficient certificate -------------------------------------------

using EmbeddingMap = std::function<Vec(const Vec&)>;  // into the Euclidean unit ball
using DiscMap = std::function<Vec(Complex)>;          // analytic disc into the domain

struct HardyStage {
    double rho;                        // circle radius sampled
    std::vector<double> per_disc_mass; // axis coefficient masses at this radius
    double total_mass;                 // their sum
    double slack;                      // (1 - rho^2) + 10/samples
};

struct HardyCertificate {
    int p = 0;
    double R = 0.0;
    int samples = 0;
    std::vector<double> rho_schedule;
    std::vector<HardyStage> stages;     // one per schedule entry
    std::vector<double> per_disc_mass;  // final stage
    double total_mass = 0.0;            // final stage
    double conclusion = 1.0;            // 1/sqrt(p)
    double slack = 0.0;                 // final stage slack
    bool chain_ok = false;
    std::string failure;  // empty when the inequality chain held
    std::vector<std::string> provenance;
};

// Evaluates g_j = F o phi_j on circles of radius rho -> 1^- and checks the
// inequality chain  p R^2 <= sum_j mass_j = total <= 1  within slack.
// F must be injective with F(phi_j(0)) = 0 and B^n(0,R) inside F(D);
// the cluster condition on the discs is caller-asserted.
HardyCertificate hardy_certificate(const EmbeddingMap& F, const std::vector<DiscMap>& discs,
                                   double R, int samples,
                                   const std::vector<double>& rho_schedule = {0.9, 0.99, 0.999});

// Certificate for a bounded symmetric domain with the canonical inputs:
// F the normalised-realisation embedding into the Euclidean ball and the
// maximal-polydisk axis discs.  R < 0 selects the default min_i
// 1/sqrt(m * rank_i) over the m factors.
HardyCertificate domain_certificate(const DomainSpec& domain, double R = -1.0,
                                    int samples = 4096);

}  // namespace sqz::sqf
