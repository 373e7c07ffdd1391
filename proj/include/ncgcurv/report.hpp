// JSON / text reports for the command-line front end.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncgcurv/forms.hpp"

namespace ncgcurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ncgcurv-report/1";

Json scalar_json(const Scalar& s);
// {basis name: token}
Json element_json(const Element& e, const AlgebraSpec& a);
// {rank, terms: [{index: [...], coeff: {basis: token}}]}; spinor legs appear as "x<a>"
Json tensor_json(const Tensor& t, const AlgebraSpec& a);
Json matrix_json(const Matrix& m);
Json check_json(const CheckResult& r);

struct Report {
    std::string command;
    std::string geometry;
    std::string theta = "symbolic";  // symbolic | classical | p/q
    std::uint64_t seed = 1;
    std::vector<CheckResult> checks;
    Json objects = Json::object();
    Json timing = Json::object();  // only filled with --timing

    bool passed() const { return all_passed(checks); }
    Json to_json() const;
    std::string to_text() const;
};

}  // namespace ncgcurv
