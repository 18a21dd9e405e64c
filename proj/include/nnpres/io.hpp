#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nnpres/checkers.hpp"
#include "nnpres/errors.hpp"
#include "nnpres/function.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/niep.hpp"
#include "nnpres/structmat.hpp"

namespace nnpres {

using json = nlohmann::json;

// ---- function files ----------------------------------------------------
// {"type":"polynomial","coeffs":[...]}
// {"type":"named","name":"exp"}
// {"type":"sum","terms":[{"weight":w,"func":{...}}]}

inline FunctionSpec function_from_json(const json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polynomial")
            return FunctionSpec::polynomial(j.at("coeffs").get<std::vector<double>>());
        if (type == "named") {
            const std::string name = j.at("name").get<std::string>();
            const auto n = named_from_string(name);
            if (!n) throw ParseError("unknown named function '" + name + "'");
            return FunctionSpec::named(*n);
        }
        if (type == "sum") {
            std::vector<std::pair<double, FunctionSpec>> terms;
            for (const auto& t : j.at("terms"))
                terms.emplace_back(t.at("weight").get<double>(), function_from_json(t.at("func")));
            return FunctionSpec::sum(terms);
        }
        throw ParseError("unknown function type '" + type + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed function file: ") + e.what());
    }
}

inline json function_to_json(const FunctionSpec& f) {
    auto atom_json = [](const FunctionSpec::Term& t) {
        json a;
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom)) {
            a["type"] = "polynomial";
            a["coeffs"] = p->coeffs;
        } else {
            a["type"] = "named";
            a["name"] = to_string(std::get<NamedFunction>(t.atom));
        }
        return a;
    };
    const auto& terms = f.terms();
    if (terms.size() == 1 && terms[0].weight == 1.0) return atom_json(terms[0]);
    json out;
    out["type"] = "sum";
    out["terms"] = json::array();
    for (const auto& t : terms)
        out["terms"].push_back({{"weight", t.weight}, {"func", atom_json(t)}});
    return out;
}

// ---- matrix files --------------------------------------------------------
// {"n":k, "rows":[[...],...], "structure":"symmetric", ("n1":...)}

inline std::optional<Structure> structure_from_string(const std::string& s) {
    for (Structure tag : {Structure::general, Structure::upper_triangular,
                          Structure::block_upper_triangular, Structure::circulant,
                          Structure::symmetric, Structure::anti_bidiagonal, Structure::jacobi})
        if (to_string(tag) == s) return tag;
    return std::nullopt;
}

inline Matrix matrix_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
        if (static_cast<int>(rows.size()) != n)
            throw ParseError("matrix file: row count disagrees with n");
        Structure tag = Structure::general;
        int block_rows = 0;
        if (j.contains("structure")) {
            const std::string s = j.at("structure").get<std::string>();
            const auto parsed = structure_from_string(s);
            if (!parsed) throw ParseError("unknown structure tag '" + s + "'");
            tag = *parsed;
            if (tag == Structure::block_upper_triangular) block_rows = j.at("n1").get<int>();
        }
        Matrix m = Matrix::from_rows(rows, tag, block_rows);
        // The shape validator cannot see definiteness; finish the check here.
        if (tag == Structure::jacobi && !is_jacobi(m))
            throw StructureMismatch("matrix is tridiagonal but not nonnegative definite");
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed matrix file: ") + e.what());
    }
}

inline json matrix_to_json(const Matrix& m) {
    json out;
    out["n"] = m.order();
    out["rows"] = m.to_rows();
    out["structure"] = to_string(m.structure());
    if (m.structure() == Structure::block_upper_triangular) out["n1"] = m.block_rows();
    return out;
}

// ---- tuples ----------------------------------------------------------
// {"tuple":[...]} in files; "a,b,c" on the command line.

inline SpectrumTuple tuple_from_json(const json& j) {
    try {
        return SpectrumTuple(j.at("tuple").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed tuple file: ") + e.what());
    }
}

inline SpectrumTuple tuple_from_csv(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("tuple entry '" + item + "' is not a number");
        }
    }
    if (values.empty()) throw ParseError("empty tuple");
    return SpectrumTuple(std::move(values));
}

// ---- reports --------------------------------------------------------

inline json report_to_json(const CheckReport& r) {
    json out;
    out["verdict"] = to_string(r.verdict);
    out["samples"] = r.samples;
    out["seed"] = r.seed;
    out["tolerance"] = r.tolerance;
    if (!r.note.empty()) out["note"] = r.note;
    if (r.witness) {
        json w;
        const Witness& wit = *r.witness;
        if (wit.matrix) w["matrix"] = matrix_to_json(*wit.matrix);
        if (wit.entry) w["entry"] = {wit.entry->first, wit.entry->second};
        if (wit.params) w["params"] = *wit.params;
        if (wit.derivative_order >= 0) w["derivative_order"] = wit.derivative_order;
        w["condition"] = wit.condition;
        w["value"] = wit.value;
        out["witness"] = std::move(w);
    }
    return out;
}

inline json niep_report_to_json(const NiepReport& r) {
    json out;
    out["pass"] = r.pass;
    if (r.violation) {
        json v;
        v["condition"] = r.violation->condition;
        if (r.violation->condition == "moment") v["m"] = r.violation->m;
        if (r.violation->condition == "jll") {
            v["k"] = r.violation->k;
            v["m"] = r.violation->m;
        }
        if (r.violation->condition == "newton") v["j"] = r.violation->j;
        v["lhs"] = r.violation->lhs;
        v["rhs"] = r.violation->rhs;
        out["violation"] = std::move(v);
    }
    return out;
}

// ---- files ------------------------------------------------------------

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
}

inline FunctionSpec load_function(const std::string& path) {
    return function_from_json(load_json_file(path));
}

inline Matrix load_matrix(const std::string& path) {
    return matrix_from_json(load_json_file(path));
}

} // namespace nnpres
