#include "sqz/json_io.hpp"

#include <regex>

namespace sqz::io {

namespace {

using jts::CartanFactor;
using jts::Complex;
using jts::Mat;
using jts::Vec;

int require_int(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ArgumentError(std::string(ctx) + ": missing integer field '" + key + "'");
    return j[key].get<int>();
}

Complex parse_pair(const json& j, const char* ctx) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ArgumentError(std::string(ctx) + ": complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json pair_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

dom::DomainSpec parse_domain(const json& j) {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
        throw ArgumentError("domain: needs a nonempty 'factors' array");
    std::vector<CartanFactor> factors;
    std::vector<double> scales;
    for (const auto& f : j["factors"]) {
        if (!f.contains("kind") || !f["kind"].is_string())
            throw ArgumentError("domain: every factor needs a string 'kind'");
        const std::string kind = f["kind"].get<std::string>();
        if (kind == "I") {
            factors.push_back(CartanFactor::type_i(require_int(f, "p", "domain factor"),
                                                   require_int(f, "q", "domain factor")));
        } else if (kind == "II") {
            factors.push_back(CartanFactor::type_ii(require_int(f, "n", "domain factor")));
        } else if (kind == "III") {
            factors.push_back(CartanFactor::type_iii(require_int(f, "n", "domain factor")));
        } else if (kind == "IV") {
            factors.push_back(CartanFactor::type_iv(require_int(f, "n", "domain factor")));
        } else {
            throw ArgumentError("domain: unknown factor kind '" + kind + "'");
        }
        scales.push_back(f.contains("scale") ? f["scale"].get<double>() : 1.0);
    }
    return dom::DomainSpec(std::move(factors), std::move(scales));
}

Vec parse_point(const json& j, int expected_dim) {
    if (!j.is_array())
        throw ArgumentError("point: expected an array of [re, im] pairs");
    if (static_cast<int>(j.size()) != expected_dim)
        throw ArgumentError("point: has " + std::to_string(j.size()) + " coordinates, expected " +
                            std::to_string(expected_dim));
    Vec v(expected_dim);
    for (int i = 0; i < expected_dim; ++i) v(i) = parse_pair(j[static_cast<std::size_t>(i)], "point");
    return v;
}

jts::JtsElement parse_element(const json& j, const CartanFactor& factor) {
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ArgumentError("element: needs an 'entries' array");
    const auto& entries = j["entries"];
    const int rows = factor.rows();
    const int cols = factor.cols();
    if (static_cast<int>(entries.size()) != rows * cols)
        throw ArgumentError("element: expected " + std::to_string(rows * cols) +
                            " entries (full matrix, row-major) for " + factor.name());
    Mat m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c)
            m(i, c) = parse_pair(entries[static_cast<std::size_t>(k++)], "element");
    return jts::JtsElement::from_matrix(factor, m);
}

kob::RemovedSet parse_removed_set(const json& j, const dom::DomainSpec& domain,
                                  int default_samples) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ArgumentError("removed set: needs a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "points") {
        if (!j.contains("data") || !j["data"].is_array() || j["data"].empty())
            throw ArgumentError("removed set: 'points' needs a nonempty 'data' array");
        std::vector<Vec> pts;
        for (const auto& p : j["data"]) pts.push_back(parse_point(p, domain.total_dim()));
        return kob::RemovedSet::finite(std::move(pts));
    }
    if (kind == "slice") {
        if (!j.contains("equation") || !j["equation"].is_string())
            throw ArgumentError("removed set: 'slice' needs an 'equation' string");
        const std::string eq = j["equation"].get<std::string>();
        static const std::regex pattern(R"(^z_(n|[0-9]+)=0$)");
        std::smatch match;
        if (!std::regex_match(eq, match, pattern))
            throw ArgumentError("removed set: slice equation must look like 'z_k=0' or 'z_n=0'");
        int coord;
        if (match[1] == "n") {
            coord = domain.total_dim() - 1;
        } else {
            coord = std::stoi(match[1]) - 1;  // equations are 1-based
        }
        const int samples = j.contains("samples") ? j["samples"].get<int>() : default_samples;
        const int levels = j.contains("levels") ? j["levels"].get<int>() : 4;
        return kob::RemovedSet::coordinate_slice(domain, coord, samples, levels);
    }
    throw ArgumentError("removed set: unknown kind '" + kind + "'");
}

Vec parse_flat_point(const json& j, int expected_dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != 2 * expected_dim)
        throw ArgumentError("point: expected a flat [re, im, ...] array of length " +
                            std::to_string(2 * expected_dim));
    Vec v(expected_dim);
    for (int i = 0; i < expected_dim; ++i) {
        if (!j[static_cast<std::size_t>(2 * i)].is_number() ||
            !j[static_cast<std::size_t>(2 * i + 1)].is_number())
            throw ArgumentError("point: entries must be numbers");
        v(i) = Complex(j[static_cast<std::size_t>(2 * i)].get<double>(),
                       j[static_cast<std::size_t>(2 * i + 1)].get<double>());
    }
    return v;
}

wlc::ConvexBody parse_body(const json& j) {
    if (!j.contains("normals") || !j["normals"].is_array() || j["normals"].empty())
        throw ArgumentError("convex body: needs a nonempty 'normals' array");
    if (!j.contains("offsets") || !j["offsets"].is_array())
        throw ArgumentError("convex body: needs an 'offsets' array");
    if (!j.contains("interior_point") || !j["interior_point"].is_array())
        throw ArgumentError("convex body: needs an 'interior_point'");
    const int n = static_cast<int>(j["interior_point"].size()) / 2;
    if (n < 1 || static_cast<int>(j["interior_point"].size()) != 2 * n)
        throw ArgumentError("convex body: interior_point must have even length");
    std::vector<Vec> normals;
    for (const auto& nu : j["normals"]) normals.push_back(parse_flat_point(nu, n));
    std::vector<double> offsets;
    for (const auto& b : j["offsets"]) {
        if (!b.is_number()) throw ArgumentError("convex body: offsets must be numbers");
        offsets.push_back(b.get<double>());
    }
    return wlc::ConvexBody(std::move(normals), std::move(offsets),
                           parse_flat_point(j["interior_point"], n));
}

// ---- emission -----------------------------------------------------------------

json point_json(const Vec& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(pair_json(v(i)));
    return out;
}

json flat_point_json(const Vec& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) {
        out.push_back(v(i).real());
        out.push_back(v(i).imag());
    }
    return out;
}

json matrix_json(const Mat& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < m.cols(); ++c) out.push_back(pair_json(m(i, c)));
    return out;
}

json bound_json(const sqf::SqueezeBound& b) {
    json out;
    out["lower"] = b.lower;
    out["upper"] = b.upper;
    out["exact"] = b.exact;
    out["provenance"] = b.provenance;
    return out;
}

json certificate_json(const sqf::HardyCertificate& c) {
    json out;
    out["p"] = c.p;
    out["R"] = c.R;
    out["per_disc_mass"] = c.per_disc_mass;
    out["total_mass"] = c.total_mass;
    out["samples"] = c.samples;
    out["rho_schedule"] = c.rho_schedule;
    out["conclusion"] = c.conclusion;
    out["slack"] = c.slack;
    out["chain_ok"] = c.chain_ok;
    if (!c.failure.empty()) out["failure"] = c.failure;
    out["provenance"] = c.provenance;
    return out;
}

json frame_json(const wlc::WlcFrame& f) {
    json out;
    out["z0"] = flat_point_json(f.z0);
    json contacts = json::array();
    for (const auto& a : f.contacts) contacts.push_back(flat_point_json(a));
    out["contact_points"] = contacts;
    out["distances"] = f.distances;
    out["active_constraints"] = f.active;
    out["U"] = matrix_json(f.U);
    json dscale = json::array();
    for (double d : f.distances) dscale.push_back(1.0 / d);
    out["Dscale"] = dscale;
    out["A"] = matrix_json(f.A);
    out["c"] = f.c;
    out["bound"] = f.bound;
    out["residuals"] = {{"hyperplane", f.hyperplane_residual},
                        {"orthogonality", f.orthogonality_residual},
                        {"contact", f.contact_residual}};
    out["cross_polytope_inside"] = f.cross_polytope_inside;
    out["provenance"] = f.provenance;
    return out;
}

json envelope_json(const kob::DistanceEnvelope& e) {
    json out;
    out["levels"] = e.estimates.size();
    out["sample_counts"] = e.sample_counts;
    out["estimates"] = e.estimates;
    out["value"] = e.value();
    out["degenerate"] = e.degenerate;
    out["direction"] = "upper estimates, nonincreasing in the level";
    return out;
}

json stratum_json(const dom::BoundaryStratum& s) {
    json out;
    out["j"] = s.j;
    out["e"] = point_json(s.e.coords());
    out["v"] = point_json(s.v.coords());
    out["v_spectral_norm"] = s.v_spectral;
    out["residuals"] = {{"reconstruction", s.reconstruction_residual},
                        {"v_outside_V0", s.v0_residual}};
    return out;
}

json decomposition_json(const jts::SpectralDecomposition& d) {
    json out;
    out["s"] = d.size();
    out["lambdas"] = d.lambdas;
    json trip = json::array();
    for (const auto& e : d.tripotents) trip.push_back(point_json(e.coords()));
    out["tripotents"] = trip;
    out["residual"] = d.residual;
    return out;
}

}  // namespace sqz::io
