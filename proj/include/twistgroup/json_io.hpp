#pragma once

// JSON wire formats: matrices as {"ring", "rows", "cols", "entries"} with
// entries in the element string syntax, and check reports with stable field
// order {check, params, status, witness?}.

#include <json.hpp>

#include "linalg.hpp"
#include "report.hpp"

namespace twistgroup {

using ordered_json = nlohmann::ordered_json;

inline ordered_json mat_to_json(const Mat& m)
{
    ordered_json j;
    j["ring"] = m.ring()->tag();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m.at(i, c).str());
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline Mat mat_from_json(const ordered_json& j)
{
    const Ring* R = Ring::from_tag(j.at("ring").get<std::string>());
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows)
        fail(errc::parse_error, "entry rows disagree with 'rows'");
    Mat m(R, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (entries[i].size() != cols)
            fail(errc::parse_error, "entry row length disagrees with 'cols'");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = R->parse(entries[i][c].get<std::string>());
    }
    return m;
}

inline ordered_json check_to_json(const CheckResult& c)
{
    ordered_json j;
    j["check"] = c.name;
    j["params"] = c.params;
    j["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.empty())
        j["witness"] = c.witness;
    return j;
}

inline ordered_json report_to_json(const Report& r)
{
    ordered_json j;
    ordered_json checks = ordered_json::array();
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
        if (!c.pass)
            ++failed;
        checks.push_back(check_to_json(c));
    }
    j["checks"] = std::move(checks);
    j["total"] = r.checks.size();
    j["failed"] = failed;
    j["status"] = failed == 0 ? "pass" : "fail";
    return j;
}

} // namespace twistgroup
