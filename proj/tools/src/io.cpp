#include "specseq_app/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "specseq/errors.hpp"

namespace specseq::app {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
    return *it;
}

int as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    const auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(where, "integer out of range");
    return static_cast<int>(v);
}

std::size_t as_nat(const Json& j, const std::string& where) {
    const int v = as_int(j, where);
    if (v < 0) fail(where, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

int parse_int(std::string_view text, const std::string& where) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        fail(where, "bad integer key '" + std::string(text) + "'");
    }
    return v;
}

Cell parse_cell_key(const std::string& key, const std::string& where) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) fail(where, "cell key '" + key + "' is not \"i,j\"");
    return {parse_int(std::string_view(key).substr(0, comma), where),
            parse_int(std::string_view(key).substr(comma + 1), where)};
}

std::string cell_key(Cell c) { return std::to_string(c.p) + "," + std::to_string(c.q); }

const Json* optional_object(const Json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) return nullptr;
    if (!it->is_object()) fail(where + "/" + key, "expected an object");
    return &*it;
}

Field resolve_field(const Json& j, Field fallback) {
    if (!j.is_object()) return fallback;
    auto it = j.find("field");
    return it == j.end() ? fallback : field_from_json(*it);
}

Json bidegree_dims(const std::map<Bidegree, std::size_t>& dims) {
    Json out = Json::array();
    for (const auto& [b, d] : dims) out.push_back({{"p", b.p}, {"q", b.q}, {"dim", d}});
    return out;
}

}  // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
        throw ParseError("malformed JSON at byte " + std::to_string(offset) + ": " + e.what(), offset);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(Field f) {
    if (f.is_rational()) return "Q";
    return Json{{"Fp", f.modulus()}};
}

Field field_from_json(const Json& j) {
    if (j.is_string()) return Field::parse(j.get<std::string>());
    if (j.is_object() && j.size() == 1 && j.contains("Fp")) {
        const std::size_t p = as_nat(j.at("Fp"), "field/Fp");
        return Field::prime(static_cast<std::uint32_t>(p));
    }
    fail("field", "expected \"Q\" or {\"Fp\": N}");
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, Field f, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a list of rows");
    Matrix m(f, rows, cols);
    if (j.empty() && (rows == 0 || cols == 0)) return m;
    if (j.size() != rows) {
        fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    }
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        const std::string at = where + "/" + std::to_string(i);
        if (!row.is_array() || row.size() != cols) fail(at, "expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& e = row[k];
            if (e.is_string()) {
                m(i, k) = f.parse_scalar(e.get<std::string>());
            } else if (e.is_number_integer()) {
                m(i, k) = f.parse_scalar(e.dump());
            } else {
                fail(at + "/" + std::to_string(k), "expected an integer or a \"a/b\" string");
            }
        }
    }
    return m;
}

Json to_json(const FilteredComplex& a) {
    Json degrees = Json::array();
    Json diffs = Json::object();
    for (int n : a.degrees()) {
        const auto w = a.weights(n);
        degrees.push_back({{"n", n}, {"dim", w.size()}, {"weights", std::vector<int>(w.begin(), w.end())}});
        const Matrix d = a.d(n);
        if (!d.is_zero()) diffs[std::to_string(n)] = to_json(d);
    }
    return {{"field", to_json(a.field())}, {"degrees", degrees}, {"differentials", diffs}};
}

FilteredComplex filtered_from_json(const Json& j, Field fallback) {
    if (!j.is_object()) fail("complex", "expected an object");
    FilteredComplex a(resolve_field(j, fallback));
    if (auto it = j.find("degrees"); it != j.end()) {
        if (!it->is_array()) fail("degrees", "expected a list");
        std::set<int> seen;
        for (std::size_t k = 0; k < it->size(); ++k) {
            const Json& e = (*it)[k];
            const std::string where = "degrees/" + std::to_string(k);
            const int n = as_int(member(e, "n", where), where + "/n");
            if (!seen.insert(n).second) fail(where, "degree " + std::to_string(n) + " listed twice");
            std::vector<int> weights;
            if (auto w = e.find("weights"); w != e.end()) {
                if (!w->is_array()) fail(where + "/weights", "expected a list");
                for (std::size_t i = 0; i < w->size(); ++i) weights.push_back(as_int((*w)[i], where + "/weights"));
            }
            if (auto d = e.find("dim"); d != e.end() && as_nat(*d, where + "/dim") != weights.size()) {
                fail(where, "dim does not match the number of weights");
            }
            a.set_degree(n, std::move(weights));
        }
    }
    if (const Json* diffs = optional_object(j, "differentials", "complex")) {
        for (const auto& [key, m] : diffs->items()) {
            const std::string where = "differentials/" + key;
            const int n = parse_int(key, where);
            a.set_d(n, matrix_from_json(m, a.field(), a.dim(n + 1), a.dim(n), where));
        }
    }
    a.validate();
    return a;
}

Json to_json(const ChainMap& f) {
    Json maps = Json::object();
    for (int n : f.degrees()) {
        const Matrix m = f.at(n);
        if (!m.is_zero()) maps[std::to_string(n)] = to_json(m);
    }
    return {{"field", to_json(f.source().field())},
            {"source", to_json(f.source())},
            {"target", to_json(f.target())},
            {"maps", maps}};
}

ChainMap chain_map_from_json(const Json& j, Field fallback) {
    const Field field = declared_field(j).value_or(fallback);
    ChainMap f(filtered_from_json(member(j, "source", "map"), field), filtered_from_json(member(j, "target", "map"), field));
    if (const Json* maps = optional_object(j, "maps", "map")) {
        for (const auto& [key, m] : maps->items()) {
            const std::string where = "maps/" + key;
            const int n = parse_int(key, where);
            f.set(n, matrix_from_json(m, field, f.target().dim(n), f.source().dim(n), where));
        }
    }
    f.validate();
    return f;
}

Json to_json(const Bicomplex& a) {
    Json cells = Json::array();
    Json d0 = Json::object(), d1 = Json::object();
    for (Cell c : a.cells()) {
        cells.push_back({{"i", c.p}, {"j", c.q}, {"dim", a.dim(c)}});
        if (const Matrix m = a.d0(c); !m.is_zero()) d0[cell_key(c)] = to_json(m);
        if (const Matrix m = a.d1(c); !m.is_zero()) d1[cell_key(c)] = to_json(m);
    }
    return {{"field", to_json(a.field())}, {"cells", cells}, {"d0", d0}, {"d1", d1}};
}

Bicomplex bicomplex_from_json(const Json& j, Field fallback) {
    if (!j.is_object()) fail("bicomplex", "expected an object");
    Bicomplex a(resolve_field(j, fallback));
    const Json& cells = member(j, "cells", "bicomplex");
    if (!cells.is_array()) fail("cells", "expected a list");
    std::set<Cell> seen;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const std::string where = "cells/" + std::to_string(k);
        const Json& e = cells[k];
        const Cell c{as_int(member(e, "i", where), where + "/i"), as_int(member(e, "j", where), where + "/j")};
        if (!seen.insert(c).second) fail(where, "cell " + cell_key(c) + " listed twice");
        a.set_cell(c, as_nat(member(e, "dim", where), where + "/dim"));
    }
    if (const Json* d0 = optional_object(j, "d0", "bicomplex")) {
        for (const auto& [key, m] : d0->items()) {
            const std::string where = "d0/" + key;
            const Cell c = parse_cell_key(key, where);
            a.set_d0(c, matrix_from_json(m, a.field(), a.dim({c.p, c.q + 1}), a.dim(c), where));
        }
    }
    if (const Json* d1 = optional_object(j, "d1", "bicomplex")) {
        for (const auto& [key, m] : d1->items()) {
            const std::string where = "d1/" + key;
            const Cell c = parse_cell_key(key, where);
            a.set_d1(c, matrix_from_json(m, a.field(), a.dim({c.p - 1, c.q}), a.dim(c), where));
        }
    }
    a.validate();
    return a;
}

Json to_json(const BiMap& f) {
    Json maps = Json::object();
    for (Cell c : f.cells()) {
        const Matrix m = f.at(c);
        if (!m.is_zero()) maps[cell_key(c)] = to_json(m);
    }
    return {{"field", to_json(f.source().field())},
            {"source", to_json(f.source())},
            {"target", to_json(f.target())},
            {"maps", maps}};
}

BiMap bimap_from_json(const Json& j, Field fallback) {
    const Field field = declared_field(j).value_or(fallback);
    BiMap f(bicomplex_from_json(member(j, "source", "map"), field), bicomplex_from_json(member(j, "target", "map"), field));
    if (const Json* maps = optional_object(j, "maps", "map")) {
        for (const auto& [key, m] : maps->items()) {
            const std::string where = "maps/" + key;
            const Cell c = parse_cell_key(key, where);
            f.set(c, matrix_from_json(m, field, f.target().dim(c), f.source().dim(c), where));
        }
    }
    f.validate();
    return f;
}

InputKind detect_kind(const Json& j) {
    if (!j.is_object()) fail("input", "expected an object");
    if (j.contains("maps") || j.contains("source")) {
        const Json& src = member(j, "source", "map");
        return src.is_object() && src.contains("cells") ? InputKind::bimap : InputKind::chain_map;
    }
    return j.contains("cells") ? InputKind::bicomplex : InputKind::filtered;
}

std::string to_string(InputKind k) {
    switch (k) {
        case InputKind::filtered: return "filtered complex";
        case InputKind::chain_map: return "filtered map";
        case InputKind::bicomplex: return "bicomplex";
        case InputKind::bimap: return "bicomplex map";
    }
    return "?";
}

std::optional<Field> declared_field(const Json& j) {
    if (!j.is_object()) return std::nullopt;
    if (auto it = j.find("field"); it != j.end()) return field_from_json(*it);
    if (auto it = j.find("source"); it != j.end()) return declared_field(*it);
    return std::nullopt;
}

Json page_to_json(const PageTable& t, Field f, const std::string& flavor) {
    Json entries = Json::array();
    for (const auto& [b, e] : t.entries) entries.push_back({{"p", b.p}, {"q", b.q}, {"n", b.q - b.p}, {"dim", e.dim}});
    Json diffs = Json::array();
    for (const auto& [b, m] : t.differentials) {
        const Bidegree to = t.target_of(b);
        diffs.push_back({{"source", {b.p, b.q}}, {"target", {to.p, to.q}}, {"matrix", to_json(m)}});
    }
    return {{"flavor", flavor}, {"field", to_json(f)}, {"r", t.r}, {"zero", t.is_zero()},
            {"entries", entries}, {"differentials", diffs}};
}

Json to_json(const Window& w) { return {{"col_lo", w.col_lo}, {"col_hi", w.col_hi}, {"margin", w.margin}}; }

Json to_json(const TruncatedBicomplex& t) {
    Json dims = Json::object();
    for (const auto& [n, d] : t.tail.dims) dims[std::to_string(n)] = d;
    return {{"window", to_json(t.window)},
            {"body", to_json(t.body)},
            {"tail", {{"side", t.tail.left ? "left" : "right"}, {"from_column", t.tail.from_column}, {"dims", dims}}}};
}

Json to_json(const Check& c) {
    Json j{{"check", c.name}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.pass && !c.detail.empty()) j["witness"] = {{"detail", c.detail}};
    return j;
}

Json to_json(const UnitReport& rep) {
    Json checks = Json::array();
    for (const Check& c : rep.checks) checks.push_back(to_json(c));
    Json unit = Json::array();
    for (const auto& [b, m] : rep.unit_page) unit.push_back({{"p", b.p}, {"q", b.q}, {"matrix", to_json(m)}});
    return {{"s", rep.s},
            {"p", rep.p},
            {"n", rep.n},
            {"window", to_json(rep.window)},
            {"checks", checks},
            {"source_page", bidegree_dims(rep.source_page)},
            {"target_page", bidegree_dims(rep.target_page)},
            {"unit_page", unit},
            {"stated_second", {{"p", rep.stated_second.p}, {"q", rep.stated_second.q}, {"found", rep.stated_second_found}}},
            {"status", rep.pass() ? "pass" : "fail"}};
}

Json to_json(const LatticeElement& s) { return std::vector<int>(s.begin(), s.end()); }

Json to_json(const LowerSet& l) {
    Json out = Json::array();
    for (const JoinIrreducible& x : l) out.push_back(to_json(x.as_set()));
    return out;
}

LatticeElement element_from_text(std::string_view text) {
    std::string body(text);
    for (char& c : body) {
        if (c == '[' || c == ']' || c == '{' || c == '}') c = ' ';
    }
    LatticeElement s;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        if (comma == std::string::npos) comma = body.size();
        std::string_view item(body.data() + start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) s.insert(parse_int(item, "set '" + std::string(text) + "'"));
        start = comma + 1;
    }
    validate_element(s);
    return s;
}

LowerSet lower_set_from_text(std::string_view text) {
    const Json j = parse_json(text);
    if (!j.is_array()) fail("lower set", "expected an array of arrays");
    LowerSet l;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string where = "lower set/" + std::to_string(k);
        if (!j[k].is_array()) fail(where, "expected an array");
        std::vector<int> xs;
        for (const Json& e : j[k]) xs.push_back(as_int(e, where));
        if (xs.size() == 1 && xs[0] >= 1) {
            l.insert({xs[0], false});
        } else if (xs.size() == 2 && xs[0] == 0 && xs[1] >= 1) {
            l.insert({xs[1], true});
        } else {
            fail(where, "a join-irreducible is [n] or [0,n] with n >= 1");
        }
    }
    validate_lower_set(l);
    return l;
}

}  // namespace specseq::app
