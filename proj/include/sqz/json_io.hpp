#pragma once

// JSON schemas of the toolkit's external interfaces.
//
//   domain       {"factors":[{"kind":"I","p":2,"q":3},{"kind":"IV","n":5}]}
//                optional per-factor "scale" (defaults to 1; the unit-ball
//                realisation)
//   point        [[re,im], ...]                  one pair per complex coordinate
//   element      {"entries":[[re,im], ...]}      full matrix row-major, or the
//                                                plain vector for type IV
//   removed set  {"kind":"points","data":[point, ...]}
//                {"kind":"slice","equation":"z_n=0","samples":N}
//   convex body  {"normals":[[re,im,re,im,...],...],
//                 "offsets":[...], "interior_point":[re,im,...]}
//
// Emitters produce keys in a fixed order so identical inputs give
// byte-identical reports.

#include <json.hpp>

#include "sqz/kobayashi.hpp"
#include "sqz/phjts.hpp"
#include "sqz/squeezing.hpp"
#include "sqz/symdomain.hpp"
#include "sqz/wlc.hpp"

namespace sqz::io {

using json = nlohmann::ordered_json;

// ---- parsing ------------------------------------------------------------------

dom::DomainSpec parse_domain(const json& j);
jts::Vec parse_point(const json& j, int expected_dim);
jts::JtsElement parse_element(const json& j, const jts::CartanFactor& factor);
kob::RemovedSet parse_removed_set(const json& j, const dom::DomainSpec& domain,
                                  int default_samples);
wlc::ConvexBody parse_body(const json& j);
// flat interleaved [re, im, re, im, ...] (the convex-body point convention)
jts::Vec parse_flat_point(const json& j, int expected_dim);

// ---- emission -----------------------------------------------------------------

json point_json(const jts::Vec& v);
json flat_point_json(const jts::Vec& v);
json matrix_json(const jts::Mat& m);  // row-major [re,im] pairs
json bound_json(const sqf::SqueezeBound& b);
json certificate_json(const sqf::HardyCertificate& c);
json frame_json(const wlc::WlcFrame& f);
json envelope_json(const kob::DistanceEnvelope& e);
json stratum_json(const dom::BoundaryStratum& s);
json decomposition_json(const jts::SpectralDecomposition& d);

}  // namespace sqz::io
