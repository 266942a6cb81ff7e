// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion.  Returns the number of failures.
//
// Usage: acceptance [path-to-sqz-binary]   (the binary is needed for the
// CLI determinism criterion)

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sqz/json_io.hpp"

using namespace sqz;
using jts::CartanFactor;
using jts::Complex;
using jts::JtsElement;
using jts::Mat;
using jts::Vec;

namespace {

std::string g_cli;
int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const std::vector<CartanFactor> kFactors = {
    CartanFactor::type_i(2, 3),
    CartanFactor::type_ii(4),
    CartanFactor::type_iii(3),
    CartanFactor::type_iv(5),
};

// ---- criterion 1: Jordan identity ----------------------------------------------

void criterion_jordan() {
    Timer timer;
    double worst = 0.0;
    for (const auto& f : kFactors) {
        Rng rng(101);
        for (int t = 0; t < 1000; ++t) {
            auto draw = [&] {
                auto e = jts::random_element(f, rng);
                return e * (1.0 / e.norm());
            };
            worst = std::max(worst, jts::jordan_residual(draw(), draw(), draw(), draw(), draw()));
        }
    }
    const double secs = timer.seconds();
    const bool pass = worst < 1e-10 && secs < 10.0;
    report(1, pass,
           "Jordan identity on 1000 quintuples per factor: max residual " + fmt(worst) +
               " (< 1e-10), " + fmt(secs) + " s (< 10 s)");
}

// ---- criterion 2: spectral decomposition ----------------------------------------

void criterion_spectral() {
    double worst_recon = 0.0, worst_orth = 0.0, worst_power = 0.0;
    bool ordered = true;
    for (const auto& f : kFactors) {
        Rng rng(102);
        for (int t = 0; t < 1000; ++t) {
            const auto x = jts::random_element(f, rng);
            const auto dec = jts::spectral_decompose(x, 1e-10);
            worst_recon = std::max(worst_recon, dec.residual);
            for (int i = 0; i < dec.size(); ++i) {
                if (i > 0 && dec.lambdas[i - 1] <= dec.lambdas[i]) ordered = false;
                for (int j = 0; j < i; ++j)
                    worst_orth = std::max(
                        worst_orth, jts::d_operator_norm(dec.tripotents[i], dec.tripotents[j]));
            }
        }
        for (int t = 0; t < 30; ++t) {
            auto x = jts::random_element(f, rng);
            x = x * (1.0 / x.norm());
            const double via_power = std::pow(jts::odd_power(x, 129).norm(), 1.0 / 129.0);
            worst_power = std::max(worst_power, std::abs(via_power - jts::spectral_norm(x)));
        }
    }
    const bool pass = worst_recon < 1e-9 && ordered && worst_orth < 1e-9 && worst_power < 1e-6;
    report(2, pass,
           "spectral decomposition on 1000 elements per factor: reconstruction " + fmt(worst_recon) +
               " (< 1e-9), orthogonality " + fmt(worst_orth) + " (< 1e-9), strict ordering " +
               (ordered ? "ok" : "VIOLATED") + ", odd-power oracle at p=64 off by " +
               fmt(worst_power) + " (< 1e-6)");
}

// ---- criterion 3: Pierce decomposition ------------------------------------------

void criterion_pierce() {
    double worst_eig = 0.0;
    bool dims_ok = true, all_ok = true;
    std::string note;
    for (const auto& f : kFactors) {
        std::vector<JtsElement> tripotents = dom::frame(f);
        {
            // partial frame sums and random spectral tripotents
            JtsElement acc = JtsElement::zero(f);
            for (const auto& e : dom::frame(f)) {
                acc = acc + e;
                tripotents.push_back(acc);
            }
            Rng rng(103);
            for (int t = 0; t < 10; ++t) {
                const auto dec = jts::spectral_decompose(jts::random_element(f, rng), 1e-10);
                for (const auto& e : dec.tripotents) tripotents.push_back(e);
            }
        }
        for (const auto& e : tripotents) {
            try {
                const auto pd = jts::pierce_decompose(e, 1e-9);
                worst_eig = std::max(worst_eig, pd.eigenvalue_residual);
                if (pd.dims[0] + pd.dims[1] + pd.dims[2] != f.ambient_dim()) dims_ok = false;
            } catch (const Error& err) {
                all_ok = false;
                note = err.what();
            }
        }
    }
    const bool pass = all_ok && dims_ok && worst_eig < 1e-9;
    report(3, pass,
           "Pierce decomposition on frames and spectral tripotents: max eigenvalue deviation " +
               fmt(worst_eig) + " (< 1e-9), dimension sums exact" +
               (note.empty() ? "" : "; error: " + note));
}

// ---- criterion 4: exact constants ------------------------------------------------

void criterion_exact_values() {
    bool pass = true;
    std::string detail;
    for (int n = 1; n <= 4; ++n) {
        const auto b = sqf::exact_constant(dom::DomainSpec({CartanFactor::type_i(1, n)}));
        if (std::abs(b.lower - 1.0) > 1e-12 || std::abs(b.upper - 1.0) > 1e-12 || !b.exact)
            pass = false;
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto bidisc = sqf::exact_constant(
        dom::DomainSpec({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)}));
    if (std::abs(bidisc.lower - inv_sqrt2) > 1e-12) pass = false;
    const auto d22 = sqf::exact_constant(dom::DomainSpec({CartanFactor::type_i(2, 2)}));
    if (std::abs(d22.lower - inv_sqrt2) > 1e-12) pass = false;
    const auto mixed = sqf::exact_constant(
        dom::DomainSpec({CartanFactor::type_i(2, 2), CartanFactor::type_iv(5)}));
    if (std::abs(mixed.lower - 0.5) > 1e-12 || std::abs(mixed.upper - 0.5) > 1e-12) pass = false;
    report(4, pass,
           "exact constants: B^n -> 1 (n=1..4), bidisc and I(2,2) -> 1/sqrt(2), "
           "I(2,2) x IV(5) -> 1/2, all to 1e-12");
}

// ---- criterion 5: removed-set bounds on the ball ---------------------------------

void criterion_ball_equality() {
    const dom::DomainSpec ball({CartanFactor::type_i(1, 2)});
    const auto origin = kob::RemovedSet::finite({Vec(Vec::Zero(2))});
    Rng rng(105);
    double worst = 0.0;
    bool exact_ok = true;
    for (int t = 0; t < 50; ++t) {
        Vec z(2);
        z << rng.complex_gaussian(), rng.complex_gaussian();
        z *= rng.uniform(0.05, 0.95) / z.norm();
        const auto b = sqf::removed_set_bounds(ball, z, origin);
        worst = std::max({worst, std::abs(b.lower - z.norm()), std::abs(b.upper - z.norm())});
        exact_ok = exact_ok && b.exact;
    }

    // slice S = {z2 = 0}: monotone envelope matching the closed form
    const auto slice = kob::RemovedSet::coordinate_slice(ball, 1, 512, 4);
    bool monotone = true;
    double worst_slice = 0.0;
    for (int t = 0; t < 5; ++t) {
        Vec z(2);
        z << rng.complex_gaussian(), rng.complex_gaussian();
        z *= rng.uniform(0.2, 0.7) / z.norm();
        const auto env = kob::dist_to_set(ball, z, slice);
        for (std::size_t l = 1; l < env.estimates.size(); ++l)
            if (env.estimates[l] > env.estimates[l - 1] + 1e-15) monotone = false;
        const double closed = std::atanh(std::abs(z(1)) / std::sqrt(1.0 - std::norm(z(0))));
        worst_slice = std::max(worst_slice, std::abs(env.value() - closed));
    }
    const bool pass = worst < 1e-9 && exact_ok && monotone && worst_slice < 1e-3;
    report(5, pass,
           "ball equality: 50 random z, |s - |z|| <= " + fmt(worst) +
               " (< 1e-9) with exact flag; slice envelope monotone over 4 levels, closed form off "
               "by " + fmt(worst_slice) + " (< 1e-3)");
}

// ---- criterion 6: Hardy certificate reference case --------------------------------

void criterion_certificate() {
    Timer timer;
    const dom::DomainSpec bidisc({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)});
    const auto cert = sqf::domain_certificate(bidisc, 1.0 / std::sqrt(2.0), 4096);
    const double secs = timer.seconds();
    bool pass = cert.chain_ok && cert.p == 2;
    for (double m : cert.per_disc_mass) pass = pass && m >= 0.499 && m <= 0.5;
    pass = pass && cert.total_mass >= 0.998 && cert.total_mass <= 1.0;
    pass = pass && std::abs(cert.conclusion - 1.0 / std::sqrt(2.0)) < 1e-12;
    pass = pass && secs < 5.0;
    report(6, pass,
           "Hardy certificate (bidisc, R=1/sqrt2, 4096 samples, rho=0.999): per-disc masses in "
           "[0.499, 0.5], total " + fmt(cert.total_mass) + " in [0.998, 1], chain holds, "
           "conclusion = 1/sqrt(2), " + fmt(secs) + " s (< 5 s)");
}

// ---- criterion 7: normalised boundary distances -----------------------------------

void criterion_distances() {
    bool pass = true;
    std::string detail;
    for (const auto& f : {CartanFactor::type_i(2, 2), CartanFactor::type_iii(3)}) {
        const double scale = dom::normalize_realization(f).scale;
        const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(f.rank()));
        double lo = 1e9, hi = 0.0, shilov_worst = 0.0;
        int shilov_count = 0;
        for (const auto& x : dom::sample_boundary(f, 10000, 107)) {
            const double norm = scale * x.norm();
            lo = std::min(lo, norm);
            hi = std::max(hi, norm);
            // Shilov samples: every spectral value sits at 1 and the unit
            // tripotent part has full rank
            const auto dec = jts::spectral_decompose(JtsElement(f, x), 1e-9);
            bool shilov = true;
            for (double l : dec.lambdas) shilov = shilov && l >= 1.0 - 1e-8;
            if (shilov) {
                JtsElement e = JtsElement::zero(f);
                for (const auto& t : dec.tripotents) e = e + t;
                shilov = jts::tripotent_rank(e) == f.rank();
            }
            if (shilov) {
                ++shilov_count;
                shilov_worst = std::max(shilov_worst, std::abs(norm - 1.0));
            }
        }
        const bool ok = std::abs(lo - inv_sqrt_r) < 2e-3 && std::abs(hi - 1.0) < 2e-3 &&
                        shilov_count > 0 && shilov_worst < 1e-8;
        pass = pass && ok;
        detail += f.name() + ": min " + fmt(lo) + " vs " + fmt(inv_sqrt_r) + ", max " + fmt(hi) +
                  ", " + std::to_string(shilov_count) + " Shilov samples off by " +
                  fmt(shilov_worst) + "; ";
    }
    report(7, pass, "normalised boundary distances (10^4 samples): " + detail +
                        "bands 2e-3 / Shilov 1e-8");
}

// ---- criterion 8: wlc pipeline -----------------------------------------------------

void criterion_wlc() {
    Timer timer;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double koebe2 = 1.0 / (16.0 * std::sqrt(2.0));

    const auto pd = wlc::polydisk_body(2, 64);
    const auto pd_frame = wlc::build_frame(pd, Vec(Vec::Zero(2)));
    bool pass = pd_frame.hyperplane_residual < 5e-3 && pd_frame.orthogonality_residual < 5e-3 &&
                pd_frame.contact_residual < 5e-3;
    pass = pass && pd_frame.c >= 0.995 && pd_frame.c <= 1.0 + 1e-12;
    pass = pass && std::abs(pd_frame.bound - koebe2) < 1e-3;

    const auto bb = wlc::ball_body(2);
    const auto bb_frame = wlc::build_frame(bb, Vec(Vec::Zero(2)));
    pass = pass && std::abs(bb_frame.c - inv_sqrt2) < 5e-3;

    // soundness: the certified lower bound never exceeds the exact constant
    const double exact_bidisc =
        sqf::exact_constant(dom::DomainSpec({CartanFactor::type_i(1, 1), CartanFactor::type_i(1, 1)}))
            .lower;
    const double exact_ball =
        sqf::exact_constant(dom::DomainSpec({CartanFactor::type_i(1, 2)})).lower;
    pass = pass && pd_frame.bound <= exact_bidisc && bb_frame.bound <= exact_ball;

    const auto grid = wlc::interior_grid(bb, 100, 108);
    const double scan = wlc::hhr_scan(bb, grid, 2);
    pass = pass && scan > 0.0;

    const double secs = timer.seconds();
    pass = pass && secs < 30.0;
    report(8, pass,
           "wlc pipeline: polydisk frame residuals " + fmt(pd_frame.hyperplane_residual) +
               " (< 5e-3), c = " + fmt(pd_frame.c) + " in [0.995, 1], bound off 1/(16 sqrt 2) by " +
               fmt(std::abs(pd_frame.bound - koebe2)) + " (< 1e-3); ball c = " + fmt(bb_frame.c) +
               " (1/sqrt2 within 5e-3); bounds below exact constants; hhr scan min " + fmt(scan) +
               " > 0; " + fmt(secs) + " s (< 30 s)");
}

// ---- criterion 9: combinator consistency -------------------------------------------

void criterion_combinators() {
    Rng rng(109);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        std::vector<CartanFactor> factors;
        std::vector<double> parts;
        const int m = rng.uniform_int(1, 4);
        for (int i = 0; i < m; ++i) {
            switch (rng.uniform_int(0, 3)) {
                case 0:
                    factors.push_back(
                        CartanFactor::type_i(rng.uniform_int(1, 3), rng.uniform_int(3, 5)));
                    break;
                case 1: factors.push_back(CartanFactor::type_ii(rng.uniform_int(2, 6))); break;
                case 2: factors.push_back(CartanFactor::type_iii(rng.uniform_int(1, 4))); break;
                default: factors.push_back(CartanFactor::type_iv(rng.uniform_int(2, 7))); break;
            }
            parts.push_back(sqf::exact_constant(dom::DomainSpec({factors.back()})).lower);
        }
        worst = std::max(worst, std::abs(sqf::product_lower_bound(parts) -
                                         sqf::exact_constant(dom::DomainSpec(factors)).lower));
    }

    bool aux_ok = true;
    for (int t = 0; t < 200; ++t) {
        const double s = rng.uniform(1e-3, 1.0);
        const int r = rng.uniform_int(1, 6);
        const auto aux = sqf::aux_conversion(s, r, sqf::AuxDirection::StdToAux);
        for (double a : {aux.lo, aux.hi}) {
            const auto back = sqf::aux_conversion(a, r, sqf::AuxDirection::AuxToStd);
            if (back.lo > s + 1e-15 || back.hi < s - 1e-15) aux_ok = false;
        }
    }
    const bool pass = worst < 1e-12 && aux_ok;
    report(9, pass,
           "combinators: product bound equals the exact product constant to " + fmt(worst) +
               " (< 1e-12) over 20 random factor lists; aux round trips always contain the value");
}

// ---- criterion 10: CLI determinism ---------------------------------------------------

std::string run_capture(const std::string& args, int& exit_code) {
    static int counter = 0;
    const auto tmp = std::filesystem::temp_directory_path() /
                     ("sqz_acceptance_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++) + ".out");
    const std::string cmd = g_cli + " " + args + " > " + tmp.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(tmp);
    std::stringstream buf;
    buf << in.rdbuf();
    std::filesystem::remove(tmp);
    return buf.str();
}

void criterion_determinism() {
    if (g_cli.empty()) {
        report(10, false, "CLI determinism: no binary path supplied");
        return;
    }
    const std::string bidisc =
        R"('{"factors":[{"kind":"I","p":1,"q":1},{"kind":"I","p":1,"q":1}]}')";
    const std::string ball = R"('{"factors":[{"kind":"I","p":1,"q":2}]}')";
    const std::string d22 = R"('{"factors":[{"kind":"I","p":2,"q":2}]}')";
    const std::string body = R"('{"normals":[[1,0],[-1,0],[0,1],[0,-1]],)"
                             R"("offsets":[1,1,1,1],"interior_point":[0,0]}')";
    const std::string slice = R"('{"kind":"slice","equation":"z_n=0","samples":64}')";
    const std::string origin_set = R"('{"kind":"points","data":[[[0,0],[0,0]]]}')";

    const std::vector<std::string> invocations = {
        "jts-check --domain " + d22 + " --seed 7 --samples 60",
        "spectral --domain " + d22 +
            " --element '{\"entries\":[[0.9,0],[0.1,0.2],[0,0.4],[-0.3,0]]}'",
        "rank --domain " + d22 + " --seed 3 --samples 24",
        "stratum --domain " + d22 + " --point '[[1,0],[0,0],[0,0],[0.5,0]]'",
        "shilov --domain " + d22 + " --point '[[1,0],[0,0],[0,0],[1,0]]'",
        "normalize --domain " + d22,
        "kobayashi --domain " + ball + " --z '[[0.2,0],[0.4,0]]' --set " + slice,
        "kobayashi --domain " + bidisc + " --z '[[0,0],[0,0]]' --w '[[0.5,0],[0.5,0]]'",
        "squeeze-exact --domain " + bidisc,
        "squeeze-product --parts '{\"values\":[1.0,0.7071067811865476]}'",
        "squeeze-removed --domain " + ball + " --z '[[0.3,0],[0,0]]' --set " + origin_set,
        "squeeze-certify --domain " + bidisc + " --samples 1024",
        "wlc-frame --body " + body + " --z0 '[0.2,0.1]'",
        "wlc-bound --body " + body + " --z0 '[0,0]'",
        "hhr-scan --body " + body + " --grid 12 --seed 5 --threads 2",
        "hhr-scan --body " + body + " --grid 6 --seed 5 --format csv",
    };
    bool pass = true;
    std::string detail;
    for (const auto& inv : invocations) {
        int code1 = 0, code2 = 0;
        const std::string out1 = run_capture(inv, code1);
        const std::string out2 = run_capture(inv, code2);
        if (code1 != 0 || code2 != 0 || out1.empty() || out1 != out2) {
            pass = false;
            detail = "first differing invocation: " + inv + " (exit " + std::to_string(code1) + ")";
            break;
        }
    }
    report(10, pass,
           "CLI determinism: " + std::to_string(invocations.size()) +
               " command invocations, two runs each, byte-identical output" +
               (detail.empty() ? "" : "; " + detail));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    std::printf("acceptance suite (squeezing-function toolkit)\n");
    criterion_jordan();
    criterion_spectral();
    criterion_pierce();
    criterion_exact_values();
    criterion_ball_equality();
    criterion_certificate();
    criterion_distances();
    criterion_wlc();
    criterion_combinators();
    criterion_determinism();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures;
}
