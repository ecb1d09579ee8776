#pragma once

#include <json.hpp>

#include "straticoh/hi_theory.hpp"

namespace straticoh {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json rational_to_json(const Rational& x);
Json matrix_to_json(const Matrix& m);

// {"vertices": [...], "simplices": [[...], ...]} (closure implied)
ComplexHandle complex_from_json(const Json& j);
Json complex_to_json(const SimplicialComplex& k);

// degree -> array of positive rationals (strings or numbers)
InnerProduct weights_from_json(const Json& j, const GradedComplex& c);

// {"base":…, "fiber":…, "fiber_weights":…, "monodromy": {"[a,b]": {"x": y,…}}}
FlatBundleSystem bundle_from_json(const Json& j);

// preset name or explicit value array p(2..n)
Perversity perversity_from_json(const Json& j, int n);

struct SpaceInput {
    bool depth1 = false;
    std::optional<IsolatedSingularitySpace> isolated;
    std::optional<DepthOneSpace> depth_one;
    std::optional<Json> perversity_json;  // as given in the file
    int n = 0;
};
SpaceInput space_from_json(const Json& j);

Json betti_to_json(const std::map<int, int>& betti);

// human-readable rendering for --format table; every numeric value shown is
// taken from the JSON report
std::string render_table(const Json& report, int indent = 0);

}  // namespace straticoh
