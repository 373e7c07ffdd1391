#include "ncgcurv/report.hpp"

#include <sstream>

namespace ncgcurv {

Json scalar_json(const Scalar& s) { return s.str(); }

Json element_json(const Element& e, const AlgebraSpec& a) {
    Json j = Json::object();
    for (const auto& [k, c] : e.terms()) j[a.key_name(k)] = c.str();
    return j;
}

Json tensor_json(const Tensor& t, const AlgebraSpec& a) {
    Json terms = Json::array();
    // terms are ordered by (legs, key), so equal indices are adjacent
    const std::vector<int>* last = nullptr;
    for (const auto& [k, c] : t.terms()) {
        if (!last || *last != k.legs) {
            Json idx = Json::array();
            for (int l : k.legs) {
                if (is_spinor_leg(l))
                    idx.push_back("x" + std::to_string(l - kSpinorLeg));
                else
                    idx.push_back(l);
            }
            terms.push_back({{"index", idx}, {"coeff", Json::object()}});
            last = &k.legs;
        }
        terms.back()["coeff"][a.key_name(k.key)] = c.str();
    }
    return {{"rank", t.rank()}, {"terms", terms}};
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
        rows.push_back(r);
    }
    return rows;
}

Json check_json(const CheckResult& r) {
    Json j = {{"name", r.name}, {"status", r.passed ? "pass" : "fail"}};
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

Json Report::to_json() const {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["geometry"] = geometry;
    j["theta"] = theta;
    j["seed"] = seed;
    j["status"] = passed() ? "pass" : "fail";
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back(check_json(c));
    j["checks"] = cs;
    j["objects"] = objects;
    if (!timing.empty()) j["timing_seconds"] = timing;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream o;
    o << command;
    if (!geometry.empty()) o << "  geometry=" << geometry << "  theta=" << theta << "  seed=" << seed;
    o << "\n";
    std::size_t failed = 0;
    for (const auto& c : checks) {
        o << (c.passed ? "  PASS  " : "  FAIL  ") << c.name;
        if (!c.witness.empty()) o << "  witness: " << c.witness;
        if (!c.detail.empty()) o << "  (" << c.detail << ")";
        o << "\n";
        failed += !c.passed;
    }
    if (command == "list" && objects.contains("geometries")) {
        for (const auto& g : objects["geometries"])
            o << "  " << g["name"].get<std::string>() << "  dimension " << g["dimension"].get<int>() << ", frame "
              << g["frame_size"].get<int>() << ", spinors " << g["spinor_rank"].get<int>() << "\n";
        return o.str();
    }
    for (const auto& [k, v] : objects.items()) {
        // scalars and short objects inline, tensors summarized
        if (v.is_string() || v.is_number() || v.is_boolean())
            o << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        else if (v.is_object() && v.contains("rank") && v.contains("terms"))
            o << "  " << k << ": rank " << v["rank"].get<int>() << " tensor, " << v["terms"].size() << " nonzero indices\n";
        else {
            std::string s = v.dump();
            if (s.size() > 160) s = s.substr(0, 157) + "...";
            o << "  " << k << ": " << s << "\n";
        }
    }
    for (const auto& [k, v] : timing.items()) o << "  time " << k << ": " << v.dump() << " s\n";
    if (!checks.empty())
        o << (failed ? "FAILED " + std::to_string(failed) + " of " : "passed all ") << checks.size() << " checks\n";
    return o.str();
}

}  // namespace ncgcurv
