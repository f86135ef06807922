#pragma once

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hrel/autodiff.hpp"
#include "hrel/verifier.hpp"

namespace hrel {

using Json = nlohmann::ordered_json;

/// Verification report document, schema_version 1:
/// {"schema_version":1, "relations":[{"name","mode","records":[{"omega",
///  "residual","tolerance","pass","method"}],"pass","ms"}], "pass","seed"}
inline Json suite_to_json(const SuiteReport& suite) {
    Json doc;
    doc["schema_version"] = 1;
    doc["relations"] = Json::array();
    for (const auto& rel : suite.relations) {
        Json r;
        r["name"] = rel.name;
        r["mode"] = rel.mode;
        r["records"] = Json::array();
        for (const auto& rec : rel.records) {
            Json j;
            j["omega"] = rec.omega;
            j["residual"] = rec.residual;
            j["tolerance"] = rec.tolerance;
            j["pass"] = rec.pass;
            j["method"] = rec.method;
            r["records"].push_back(std::move(j));
        }
        r["pass"] = rel.pass;
        r["ms"] = rel.ms;
        doc["relations"].push_back(std::move(r));
    }
    doc["pass"] = suite.pass;
    doc["seed"] = suite.seed;
    return doc;
}

inline std::string suite_to_table(const SuiteReport& suite) {
    std::ostringstream out;
    out << std::left << std::setw(22) << "relation" << std::setw(34) << "omega"
        << std::setw(14) << "residual" << std::setw(12) << "tolerance" << std::setw(6)
        << "pass" << "method\n";
    for (const auto& rel : suite.relations) {
        for (const auto& rec : rel.records) {
            out << std::left << std::setw(22) << rel.name << std::setw(34) << rec.omega
                << std::setw(14) << std::scientific << std::setprecision(3)
                << rec.residual << std::setw(12) << rec.tolerance << std::setw(6)
                << (rec.pass ? "ok" : "FAIL") << rec.method << "\n";
        }
        out << std::left << std::setw(22) << rel.name << std::setw(34) << "(overall)"
            << std::setw(14) << "" << std::setw(12) << "" << std::setw(6)
            << (rel.pass ? "ok" : "FAIL") << std::fixed << std::setprecision(2)
            << rel.ms << " ms\n";
    }
    out << (suite.pass ? "PASS" : "FAIL") << " (seed " << suite.seed << ")\n";
    return out.str();
}

inline Json matrix_to_json(const CMatrix& m) {
    Json real = Json::array(), imag = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json re_row = Json::array(), im_row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        real.push_back(std::move(re_row));
        imag.push_back(std::move(im_row));
    }
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["real"] = std::move(real);
    j["imag"] = std::move(imag);
    return j;
}

/// One derived generator for the `derive` command, with its finite
/// difference cross-check and, for affine coordinate reps, the flow data.
struct DerivedGenerator {
    Generator gen;
    std::string omega_name;
    double fd_discrepancy = 0.0;
    double fd_step = 0.0;
    std::optional<AffineFlowData> flow;
};

inline Json derived_to_json(const std::string& file,
                            const std::vector<DerivedGenerator>& gens) {
    Json doc;
    doc["schema_version"] = 1;
    doc["file"] = file;
    doc["generators"] = Json::array();
    for (const auto& d : gens) {
        Json j;
        j["rep"] = d.gen.rep_name;
        j["omega"] = d.omega_name;
        j["matrix"] = matrix_to_json(d.gen.matrix);
        j["method"] = d.gen.method == GeneratorMethod::Dual ? "dual" : "fd";
        j["fd_discrepancy"] = d.fd_discrepancy;
        j["fd_step"] = d.fd_step;
        if (d.flow) {
            Json f;
            f["delta"] = d.flow->delta_det;
            f["delta_trace"] = d.flow->delta_trace;
            Json linear = Json::array();
            for (int r = 0; r < d.flow->linear_part.rows(); ++r) {
                Json row = Json::array();
                for (int c = 0; c < d.flow->linear_part.cols(); ++c)
                    row.push_back(d.flow->linear_part(r, c));
                linear.push_back(std::move(row));
            }
            f["linear"] = std::move(linear);
            f["shift"] = d.flow->shift_part;
            j["flow"] = std::move(f);
        }
        doc["generators"].push_back(std::move(j));
    }
    return doc;
}

inline std::string format_complex_matrix(const CMatrix& m, int indent = 2) {
    std::ostringstream out;
    for (int r = 0; r < m.rows(); ++r) {
        out << std::string(size_t(indent), ' ');
        for (int c = 0; c < m.cols(); ++c) {
            std::ostringstream cell;
            cell << std::setprecision(6) << m(r, c).real();
            if (m(r, c).imag() != 0.0)
                cell << (m(r, c).imag() > 0 ? "+" : "") << std::setprecision(6)
                     << m(r, c).imag() << "i";
            out << std::left << std::setw(16) << cell.str();
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace hrel
