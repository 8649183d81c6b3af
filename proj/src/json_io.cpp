#include "qarc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qarc {

Json to_json(const LaurentPoly& f) {
    Json coeffs = Json::array();
    for (const auto& [n, c] : f.coeffs()) coeffs.push_back(Json::array({n, c.real(), c.imag()}));
    return Json{{"coeffs", std::move(coeffs)}};
}

LaurentPoly laurent_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("polynomial JSON must be an object with a \"coeffs\" array");
    std::map<int, Complex> coeffs;
    long long prev = std::numeric_limits<long long>::min();
    for (const auto& entry : j["coeffs"]) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number() || !entry[2].is_number())
            throw std::invalid_argument("each coefficient must be a [frequency, re, im] triple");
        const long long n = entry[0].get<long long>();
        if (n <= prev) throw std::invalid_argument("coefficient frequencies must be sorted ascending and unique");
        prev = n;
        if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
            throw std::invalid_argument("coefficient frequency out of range");
        coeffs[static_cast<int>(n)] = Complex(entry[1].get<double>(), entry[2].get<double>());
    }
    return LaurentPoly(std::move(coeffs));
}

Json to_json(const SupNormCert& cert) {
    return Json{{"grid_max", cert.grid_max},
                {"corrected_upper", cert.corrected_upper},
                {"grid_size", cert.grid_size},
                {"degree", cert.degree}};
}

Json to_json(const MKResult& r) {
    return Json{{"lp_value", r.lp_value},
                {"lower", r.lower},
                {"upper", r.upper},
                {"lp_iterations", r.lp_iterations},
                {"optimizer", to_json(r.optimizer)}};
}

Json to_json(const GHBoundReport& rep) {
    return Json{{"q", rep.q},
                {"q0", rep.q0},
                {"M", rep.M},
                {"chi_lower", rep.chi_lower},
                {"chi_upper", rep.chi_upper},
                {"band_bound", rep.band_bound},
                {"eps_M", rep.eps_M},
                {"total_upper", rep.total_upper}};
}

Json to_json(const BandedOperator& t) {
    Json entries = Json::array();
    for (const Complex& c : t.entries()) entries.push_back(Json::array({c.real(), c.imag()}));
    return Json{{"window", t.window()}, {"entries", std::move(entries)}};
}

Json to_json(const ContinuityScan& scan) {
    Json rows = Json::array();
    for (const GHBoundReport& rep : scan.rows) rows.push_back(to_json(rep));
    Json best = Json::array();
    for (const auto& [q, bound] : scan.best) best.push_back(Json{{"q", q}, {"bound", bound}});
    return Json{{"rows", std::move(rows)}, {"best", std::move(best)}};
}

std::string to_csv(const ContinuityScan& scan) {
    std::ostringstream out;
    out << "q,M,chi_lower,chi_upper,band_bound,eps_M,total_upper\n";
    for (const GHBoundReport& r : scan.rows) {
        out << format_g12(r.q) << ',' << r.M << ',' << format_g12(r.chi_lower) << ','
            << format_g12(r.chi_upper) << ',' << format_g12(r.band_bound) << ','
            << format_g12(r.eps_M) << ',' << format_g12(r.total_upper) << '\n';
    }
    return out.str();
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += Json(key).dump();
                out += ": ";
                dump_rec(val, out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            // Short numeric arrays stay on one line.
            bool flat = true;
            for (const auto& v : j)
                if (v.is_structured()) { flat = false; break; }
            if (flat && j.size() <= 8) {
                out += "[";
                bool first = true;
                for (const auto& v : j) {
                    if (!first) out += ", ";
                    first = false;
                    dump_rec(v, out, indent, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(v, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) { out += "null"; return; }
            out += format_g12(v);
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_g12(const Json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace qarc
