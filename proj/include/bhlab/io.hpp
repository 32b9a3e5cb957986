#pragma once

// Matrix parsing and table output (aligned text, CSV, JSON).

#include <bhlab/bhmat.hpp>
#include <bhlab/chaincx.hpp>
#include <bhlab/pilaurent.hpp>
#include <bhlab/rational.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhlab {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inline JSON ("[[2,1],[0,3]]") or a path to a file holding it.
inline std::vector<std::vector<std::int64_t>> parse_matrix(const std::string &arg)
{
    std::string text = arg;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty matrix");
    if (text[first] != '[') {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot read matrix file " + arg);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("matrix is not JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("matrix must be a list of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto &r : j) {
        if (!r.is_array()) throw ParseError("matrix must be a list of rows");
        rows.emplace_back();
        for (const auto &x : r) {
            if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
            rows.back().push_back(x.get<std::int64_t>());
        }
    }
    return rows;
}

enum class Format { Pretty, Json, Csv };

inline Format parse_format(const std::string &s)
{
    if (s == "pretty") return Format::Pretty;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw ParseError("unknown format " + s);
}

/// A cell shows `text` in pretty and CSV output and `value` in JSON.
struct Cell {
    std::string text;
    Json value;

    Cell(std::string t, Json v) : text(std::move(t)), value(std::move(v)) {}
    Cell(const std::string &t) : text(t), value(t) {} // NOLINT
    Cell(const char *t) : Cell(std::string(t)) {}     // NOLINT
    Cell(std::int64_t x) : text(std::to_string(x)), value(x) {} // NOLINT
    Cell(const Rational &q) : text(to_string(q)), value(is_integer(q) ? Json(to_i64(q.get_num())) : Json(to_string(q))) {} // NOLINT
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

inline std::string vec_str(const IntVec &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline std::string vec_str(const RatVec &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

inline Cell vec_cell(const IntVec &v) { return {vec_str(v), Json(v)}; }

inline Cell vec_cell(const RatVec &v)
{
    Json j = Json::array();
    for (const auto &x : v) j.push_back(to_string(x));
    return {vec_str(v), j};
}

inline Cell mono_cell(const Monomial &mo)
{
    Json e = Json::array();
    for (std::size_t i = 0; i < mo.gamma.size(); ++i)
        if (mo.I & bit(i)) e.push_back(i + 1);
    return {mo.str(), Json{{"x", mo.gamma}, {"y", mo.lam}, {"e", e}}};
}

inline std::string superscript(std::int64_t k)
{
    static const char *d[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s = k < 0 ? "⁻" : "";
    for (char c : std::to_string(k < 0 ? -k : k)) s += d[c - '0'];
    return s;
}

inline std::string pi_text(const PiLaurent &v)
{
    if (v.terms().empty()) return "0";
    std::string s;
    for (const auto &[k, c] : v.terms()) {
        Rational a = c;
        if (s.empty()) {
            if (a < 0) s += "-";
        } else {
            s += a < 0 ? " - " : " + ";
        }
        a = abs(a);
        if (k == 0 || a != 1) s += to_string(a);
        if (k != 0) s += "π" + (k == 1 ? std::string() : superscript(k));
    }
    return s;
}

inline Cell pi_cell(const PiLaurent &v)
{
    Json j = Json::object();
    for (const auto &[k, c] : v.terms()) j[std::to_string(k)] = to_string(c);
    return {pi_text(v), j};
}

inline std::string render_pretty(const Table &t)
{
    std::vector<std::size_t> w(t.columns.size());
    auto width = [](const std::string &s) {
        // count code points so superscripts line up
        std::size_t n = 0;
        for (unsigned char ch : s)
            if ((ch & 0xC0) != 0x80) ++n;
        return n;
    };
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = width(t.columns[c]);
    for (const auto &r : t.rows)
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::max(w[c], width(r[c].text));
    std::ostringstream os;
    auto line = [&](auto get) {
        for (std::size_t c = 0; c < w.size(); ++c) {
            std::string s = get(c);
            os << s;
            if (c + 1 < w.size()) os << std::string(w[c] - width(s) + 2, ' ');
        }
        os << "\n";
    };
    line([&](std::size_t c) { return t.columns[c]; });
    line([&](std::size_t c) { return std::string(w[c], '-'); });
    for (const auto &r : t.rows) line([&](std::size_t c) { return r[c].text; });
    return os.str();
}

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

inline std::string render_csv(const Table &t)
{
    std::ostringstream os;
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
    os << "\n";
    for (const auto &r : t.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << csv_field(r[c].text);
        os << "\n";
    }
    return os.str();
}

inline Json table_json(const Table &t)
{
    Json a = Json::array();
    for (const auto &r : t.rows) {
        Json o = Json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = r[c].value;
        a.push_back(o);
    }
    return a;
}

inline std::string render(const Table &t, Format f)
{
    switch (f) {
    case Format::Pretty: return render_pretty(t);
    case Format::Csv: return render_csv(t);
    case Format::Json: return table_json(t).dump(2) + "\n";
    }
    return {};
}

} // namespace bhlab
