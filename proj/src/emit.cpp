#include "unruh/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "unruh/errors.hpp"

namespace unruh {

namespace {

using ojson = nlohmann::ordered_json;

const char* const kColumns[] = {"axis_value", "variant", "quantity", "a1", "a2", "b1", "b2", "d", "error_marker"};

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

double number_from(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

void dump_value(const ojson& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner + ojson(key).dump() + ": ";
                dump_value(value, indent + 1, out);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::none_of(j.begin(), j.end(), [](const ojson& e) { return e.is_structured(); });
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += inner;
                dump_value(e, indent + 1, out);
            }
            out += flat ? "]" : "\n" + pad + "]";
            return;
        }
        case ojson::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ConfigError("unknown format '" + std::string(text) + "'");
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::string s = buf;
    // Keep a decimal point so the value reads back as a float in JSON.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string to_csv(const SweepResult& result) {
    std::string out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        if (i > 0) out += ',';
        out += kColumns[i];
    }
    out += '\n';
    for (const auto& row : result.rows) {
        out += format_double(row.axis_value);
        out += ',';
        out += to_string(row.variant);
        out += ',';
        out += result.spec.quantity == Quantity::coefficients ? std::string() : format_double(row.value);
        for (double c : {row.coeffs.a1, row.coeffs.a2, row.coeffs.b1, row.coeffs.b2, row.coeffs.d}) {
            out += ',';
            out += format_double(c);
        }
        out += ',';
        out += csv_field(row.error);
        out += '\n';
    }
    return out;
}

ojson spec_to_json(const SweepSpec& spec) {
    ojson j;
    j["label"] = spec.label;
    j["axis"] = std::string(to_string(spec.axis));
    j["quantity"] = std::string(to_string(spec.quantity));
    ojson variants = ojson::array();
    for (Variant v : spec.ordered_variants()) variants.push_back(std::string(to_string(v)));
    j["variants"] = variants;
    j["fixed"] = ojson{{"z_omega", spec.fixed.z_omega},
                       {"a_over_omega", spec.fixed.a_over_omega},
                       {"l_omega", spec.fixed.l_omega},
                       {"omega", spec.fixed.omega},
                       {"gamma0", spec.fixed.gamma0}};
    j["tol"] = spec.tol;
    j["horizon"] = spec.horizon;
    j["initial"] = spec.initial;
    j["grid"] = spec.grid;
    return j;
}

SweepSpec spec_from_json(const nlohmann::json& doc) {
    try {
        if (!doc.is_object()) throw ConfigError("sweep spec must be a JSON object");
        SweepSpec s;
        s.label = doc.value("label", std::string());
        s.axis = parse_axis(doc.at("axis").get<std::string>());
        s.quantity = parse_quantity(doc.at("quantity").get<std::string>());
        if (doc.contains("variants")) {
            s.variants.clear();
            for (const auto& v : doc.at("variants")) s.variants.push_back(parse_variant(v.get<std::string>()));
        }
        if (doc.contains("fixed")) {
            const auto& f = doc.at("fixed");
            s.fixed.z_omega = f.value("z_omega", s.fixed.z_omega);
            s.fixed.a_over_omega = f.value("a_over_omega", s.fixed.a_over_omega);
            s.fixed.l_omega = f.value("l_omega", s.fixed.l_omega);
            s.fixed.omega = f.value("omega", s.fixed.omega);
            s.fixed.gamma0 = f.value("gamma0", s.fixed.gamma0);
        }
        s.tol = doc.value("tol", s.tol);
        s.horizon = doc.value("horizon", s.horizon);
        s.initial = doc.value("initial", s.initial);
        if (doc.contains("grid")) {
            s.grid = doc.at("grid").get<std::vector<double>>();
        } else if (doc.contains("range")) {
            const auto& r = doc.at("range");
            const double start = r.at("start").get<double>();
            const double stop = r.at("stop").get<double>();
            const auto count = r.at("count").get<std::size_t>();
            const std::string spacing = r.value("spacing", std::string("linear"));
            if (spacing == "linear") {
                s.grid = linear_grid(start, stop, count);
            } else if (spacing == "log") {
                s.grid = log_grid(start, stop, count);
            } else {
                throw ConfigError("range spacing must be 'linear' or 'log'");
            }
        } else {
            throw ConfigError("sweep spec needs a 'grid' or a 'range'");
        }
        s.validate();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed sweep spec: ") + e.what());
    }
}

std::string dump_json(const ojson& doc) {
    std::string out;
    dump_value(doc, 0, out);
    out += '\n';
    return out;
}

std::string to_json(const SweepResult& result) {
    ojson doc;
    doc["metadata"] = ojson{{"version", std::string(kVersion)},
                            {"units", ojson{{"rates", "gamma0"},
                                            {"times", "1/gamma0"},
                                            {"axes", "dimensionless, omega = 1"}}},
                            {"spec", spec_to_json(result.spec)}};
    ojson columns = ojson::array();
    for (const char* c : kColumns) columns.push_back(c);
    doc["columns"] = columns;

    ojson rows = ojson::array();
    for (const auto& row : result.rows) {
        ojson r;
        r["axis_value"] = row.axis_value;
        r["variant"] = std::string(to_string(row.variant));
        r["quantity"] = result.spec.quantity == Quantity::coefficients ? ojson(nullptr) : number_or_null(row.value);
        r["a1"] = number_or_null(row.coeffs.a1);
        r["a2"] = number_or_null(row.coeffs.a2);
        r["b1"] = number_or_null(row.coeffs.b1);
        r["b2"] = number_or_null(row.coeffs.b2);
        r["d"] = number_or_null(row.coeffs.d);
        r["error_marker"] = row.error;
        rows.push_back(std::move(r));
    }
    doc["rows"] = rows;
    return dump_json(doc);
}

SweepResult result_from_json(std::string_view text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        SweepResult result;
        // The echoed spec has already been validated when it was written.
        result.spec = spec_from_json(doc.at("metadata").at("spec"));
        for (const auto& r : doc.at("rows")) {
            SweepRow row;
            row.axis_value = r.at("axis_value").get<double>();
            row.variant = parse_variant(r.at("variant").get<std::string>());
            row.value = number_from(r.at("quantity"));
            row.coeffs = {number_from(r.at("a1")), number_from(r.at("a2")), number_from(r.at("b1")),
                          number_from(r.at("b2")), number_from(r.at("d"))};
            row.error = r.at("error_marker").get<std::string>();
            result.rows.push_back(std::move(row));
        }
        return result;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed sweep result: ") + e.what());
    }
}

void emit(const SweepResult& result, Format format, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << (format == Format::csv ? to_csv(result) : to_json(result));
    if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace unruh
