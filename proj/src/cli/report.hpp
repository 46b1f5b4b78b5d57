#pragma once

// JSON encodings of the report records, and the table view rendered from the
// same JSON so both outputs carry identical numbers.

#include "json.hpp"

#include <string>

#include "fibresum/construct.hpp"
#include "fibresum/fourman.hpp"
#include "fibresum/gompfsum.hpp"

namespace fibresum::cli::report {

using Json = nlohmann::ordered_json;

Json integer(const BigInt& v);
Json vector(const intlat::IntVector& v);
Json signs(const std::vector<int>& s);
Json divisibility(const intlat::DivisibilityReport& d);
Json manifold(const fourman::FourManifold& m);
Json form(const gompfsum::FormClass& f);
Json check(const gompfsum::Check& c);
Json hypotheses(const construct::HypothesisReport& h);
Json recipe(const gompfsum::SumRecipe& r);
Json real(double v);

/// Indented key/value view; arrays of records become aligned columns.
std::string table(const Json& doc);

}  // namespace fibresum::cli::report
