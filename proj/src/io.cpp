#include "ccmerge/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ccm {

namespace {

using nlohmann::json;

constexpr const char* kComplexSchema = "ccmerge/complex/1";
constexpr const char* kQuotientSchema = "ccmerge/quotient/1";
constexpr const char* kReportSchema = "ccmerge/report/1";

// ---------------------------------------------------------------------------
// Emitter. nlohmann's object type already iterates keys in sorted order; all
// this adds is a fixed layout (scalar arrays inline, everything else one
// element per line) and shortest round-trip decimals via std::to_chars.

void emit_double(std::string& out, double v) {
    if (!std::isfinite(v)) {
        throw InternalError("NONFINITE_SERIALIZE: refusing to serialize a non-finite number");
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

void emit_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

bool is_scalar_array(const json& arr) {
    for (const auto& v : arr) {
        if (v.is_array() || v.is_object()) return false;
    }
    return true;
}

void emit_value(std::string& out, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
        case json::value_t::null: out += "null"; break;
        case json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
        case json::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); break;
        case json::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); break;
        case json::value_t::number_float: emit_double(out, v.get<double>()); break;
        case json::value_t::string: emit_string(out, v.get<std::string>()); break;
        case json::value_t::array: {
            if (v.empty()) {
                out += "[]";
            } else if (is_scalar_array(v)) {
                out += '[';
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    emit_value(out, v[i], indent);
                }
                out += ']';
            } else {
                out += "[\n";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    out += pad_in;
                    emit_value(out, v[i], indent + 1);
                    if (i + 1 < v.size()) out += ',';
                    out += '\n';
                }
                out += pad + ']';
            }
            break;
        }
        case json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = v.begin(); it != v.end(); ++it, ++i) {
                out += pad_in;
                emit_string(out, it.key());
                out += ": ";
                emit_value(out, it.value(), indent + 1);
                if (i + 1 < v.size()) out += ',';
                out += '\n';
            }
            out += pad + '}';
            break;
        }
        default:
            throw InternalError("JSON_TYPE: unsupported value type in serializer");
    }
}

std::string emit_document(const json& v) {
    std::string out;
    emit_value(out, v, 0);
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers.

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t stop = std::min(text.size(), e.byte);
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') ++line;
        }
        throw SchemaError("JSON_PARSE: line " + std::to_string(line) + ": " + e.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw SchemaError("SCHEMA_INVALID: " + where + " must be an object");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaError("SCHEMA_INVALID: unknown field \"" + it.key() + "\" in " + where);
        }
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError("SCHEMA_INVALID: " + where + " is missing field \"" + key + "\"");
    }
    return *it;
}

void check_version(const json& obj, const std::string& where, const char* expected) {
    const json& v = require(obj, where, "schema_version");
    if (!v.is_string() || v.get<std::string>() != expected) {
        throw SchemaError("SCHEMA_INVALID: " + where + " schema_version must be \"" +
                          expected + "\"");
    }
}

index_t to_index(const json& v, const std::string& where) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw SchemaError("SCHEMA_INVALID: " + where + " must be an integer");
    }
    const std::int64_t raw = v.get<std::int64_t>();
    if (raw < -(1ll << 31) || raw > (1ll << 31) - 1) {
        throw SchemaError("SCHEMA_INVALID: " + where + " out of 32-bit range");
    }
    return static_cast<index_t>(raw);
}

PointCloud parse_vertices(const json& arr, const std::string& where) {
    if (!arr.is_array()) {
        throw SchemaError("SCHEMA_INVALID: " + where + " must be an array of [x, y, z] triples");
    }
    PointCloud cloud(3, static_cast<index_t>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 3) {
            throw SchemaError("SCHEMA_INVALID: " + where + "[" + std::to_string(i + 1) +
                              "] must be an [x, y, z] triple");
        }
        for (int a = 0; a < 3; ++a) {
            if (!p[a].is_number()) {
                throw SchemaError("SCHEMA_INVALID: " + where + "[" + std::to_string(i + 1) +
                                  "] holds a non-numeric coordinate");
            }
            const double c = p[a].get<double>();
            if (!std::isfinite(c)) {
                throw SchemaError("SCHEMA_INVALID: " + where + "[" + std::to_string(i + 1) +
                                  "] holds a non-finite coordinate");
            }
            cloud.point(static_cast<index_t>(i))[a] = c;
        }
    }
    return cloud;
}

json vertices_to_json(const PointCloud& cloud) {
    json arr = json::array();
    for (index_t i = 0; i < cloud.npoints(); ++i) {
        json p = json::array();
        for (int a = 0; a < cloud.dim; ++a) p.push_back(cloud.point(i)[a]);
        arr.push_back(std::move(p));
    }
    return arr;
}

SignedSparseMatrix parse_matrix(const json& obj, const std::string& where) {
    check_keys(obj, where, {"nrows", "ncols", "triples"});
    const index_t nrows = to_index(require(obj, where, "nrows"), where + ".nrows");
    const index_t ncols = to_index(require(obj, where, "ncols"), where + ".ncols");
    if (nrows < 0 || ncols < 0) {
        throw SchemaError("SCHEMA_INVALID: " + where + " dimensions must be >= 0");
    }
    const json& triples = require(obj, where, "triples");
    if (!triples.is_array()) {
        throw SchemaError("SCHEMA_INVALID: " + where + ".triples must be an array");
    }
    std::vector<Triple> parsed;
    parsed.reserve(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const json& t = triples[i];
        const std::string slot = where + ".triples[" + std::to_string(i + 1) + "]";
        if (!t.is_array() || t.size() != 3) {
            throw SchemaError("SCHEMA_INVALID: " + slot + " must be a [row, col, value] triple");
        }
        parsed.push_back({to_index(t[0], slot), to_index(t[1], slot), to_index(t[2], slot)});
    }
    try {
        return SignedSparseMatrix::from_triples(nrows, ncols, parsed);
    } catch (const SchemaError& e) {
        throw SchemaError(std::string(e.what()) + " (in " + where + ")");
    }
}

json matrix_to_json(const SignedSparseMatrix& m) {
    json obj;
    obj["nrows"] = m.nrows();
    obj["ncols"] = m.ncols();
    json triples = json::array();
    for (const Triple& t : m.to_triples()) {
        triples.push_back(json::array({t.row, t.col, t.value}));
    }
    obj["triples"] = std::move(triples);
    return obj;
}

std::vector<std::vector<index_t>> parse_index_lists(const json& arr, const std::string& where,
                                                    index_t max_value) {
    if (!arr.is_array()) {
        throw SchemaError("SCHEMA_INVALID: " + where + " must be an array of index lists");
    }
    std::vector<std::vector<index_t>> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& list = arr[i];
        const std::string slot = where + "[" + std::to_string(i + 1) + "]";
        if (!list.is_array()) {
            throw SchemaError("SCHEMA_INVALID: " + slot + " must be an index list");
        }
        std::vector<index_t> members;
        members.reserve(list.size());
        for (const json& v : list) {
            const index_t idx = to_index(v, slot);
            if (idx < 1 || idx > max_value) {
                throw SchemaError("SCHEMA_INVALID: " + slot + " index " + std::to_string(idx) +
                                  " outside 1.." + std::to_string(max_value));
            }
            members.push_back(idx - 1);
        }
        out.push_back(std::move(members));
    }
    return out;
}

json index_lists_to_json(const std::vector<std::vector<index_t>>& lists) {
    json arr = json::array();
    for (const auto& list : lists) {
        json inner = json::array();
        for (index_t v : list) inner.push_back(v + 1);
        arr.push_back(std::move(inner));
    }
    return arr;
}

CellArray parse_cells(const json& arr, const std::string& where, index_t max_value) {
    CellArray cells;
    cells.cells = parse_index_lists(arr, where, max_value);
    for (std::size_t i = 0; i < cells.cells.size(); ++i) {
        const auto& facets = cells.cells[i];
        for (std::size_t k = 1; k < facets.size(); ++k) {
            if (facets[k] <= facets[k - 1]) {
                throw SchemaError("SCHEMA_INVALID: " + where + "[" + std::to_string(i + 1) +
                                  "] facets must be strictly ascending");
            }
        }
    }
    return cells;
}

}  // namespace

// ---------------------------------------------------------------------------
// Complex files.

AccumulatorComplex complex_from_json(const std::string& text) {
    const json doc = parse_text(text);
    check_keys(doc, "complex file", {"schema_version", "vertices", "delta0", "delta1"});
    check_version(doc, "complex file", kComplexSchema);
    AccumulatorComplex acc;
    acc.vertices = parse_vertices(require(doc, "complex file", "vertices"), "vertices");
    acc.delta0 = parse_matrix(require(doc, "complex file", "delta0"), "delta0");
    acc.delta1 = parse_matrix(require(doc, "complex file", "delta1"), "delta1");
    acc.validate();
    return acc;
}

std::string complex_to_json(const AccumulatorComplex& acc) {
    json doc;
    doc["schema_version"] = kComplexSchema;
    doc["vertices"] = vertices_to_json(acc.vertices);
    doc["delta0"] = matrix_to_json(acc.delta0);
    doc["delta1"] = matrix_to_json(acc.delta1);
    return emit_document(doc);
}

// ---------------------------------------------------------------------------
// Quotient files.

namespace {

struct ClassSection {
    std::vector<std::vector<index_t>> classes;
    std::vector<std::vector<std::int8_t>> signs;
    std::vector<index_t> dropped;
};

ClassSection parse_class_section(const json& obj, const std::string& where, index_t max_member,
                                 bool with_drops, bool signs_required) {
    ClassSection out;
    if (with_drops) {
        check_keys(obj, where, {"classes", "dropped", "signs"});
    } else {
        check_keys(obj, where, {"classes"});
    }
    out.classes =
        parse_index_lists(require(obj, where, "classes"), where + ".classes", max_member);
    if (with_drops) {
        const json& dropped = require(obj, where, "dropped");
        if (!dropped.is_array()) {
            throw SchemaError("SCHEMA_INVALID: " + where + ".dropped must be an array");
        }
        index_t prev = 0;
        for (const json& v : dropped) {
            const index_t idx = to_index(v, where + ".dropped");
            if (idx < 1 || idx <= prev) {
                throw SchemaError("SCHEMA_INVALID: " + where +
                                  ".dropped must be strictly ascending positive indices");
            }
            out.dropped.push_back(idx - 1);
            prev = idx;
        }
        const bool has_signs = obj.contains("signs");
        if (has_signs != signs_required) {
            throw SchemaError("SCHEMA_INVALID: " + where + (signs_required
                                  ? " must carry signs when operators are present"
                                  : " must not carry signs without operators"));
        }
        if (has_signs) {
            const json& signs = obj["signs"];
            if (!signs.is_array() || signs.size() != out.classes.size()) {
                throw SchemaError("SCHEMA_INVALID: " + where +
                                  ".signs must parallel the class list");
            }
            for (std::size_t k = 0; k < signs.size(); ++k) {
                if (!signs[k].is_array() || signs[k].size() != out.classes[k].size()) {
                    throw SchemaError("SCHEMA_INVALID: " + where + ".signs[" +
                                      std::to_string(k + 1) + "] must parallel its class");
                }
                std::vector<std::int8_t> row;
                for (const json& v : signs[k]) {
                    const index_t s = to_index(v, where + ".signs");
                    if (s != 1 && s != -1) {
                        throw SchemaError("SCHEMA_INVALID: " + where +
                                          ".signs entries must be +1 or -1");
                    }
                    row.push_back(static_cast<std::int8_t>(s));
                }
                out.signs.push_back(std::move(row));
            }
        }
    }
    return out;
}

void require_pattern_match(const SignedSparseMatrix& m, const CellArray& cells,
                           const std::string& what) {
    const SignedSparseMatrix rows = transpose(m);
    for (index_t i = 0; i < rows.ncols(); ++i) {
        auto rs = rows.column_rows(i);
        const auto& cell = cells.cells[i];
        if (!std::equal(rs.begin(), rs.end(), cell.begin(), cell.end())) {
            throw SchemaError("SCHEMA_INVALID: " + what + " row " + std::to_string(i + 1) +
                              " does not match its cell entry");
        }
        for (coeff_t v : rows.column_values(i)) {
            if (v != 1 && v != -1) {
                throw SchemaError("SCHEMA_INVALID: " + what +
                                  " holds a coefficient outside {-1,+1}");
            }
        }
    }
}

}  // namespace

QuotientComplex quotient_from_json(const std::string& text) {
    const json doc = parse_text(text);
    check_keys(doc, "quotient file",
               {"schema_version", "vertices", "ev", "fe", "delta0", "delta1", "classes"});
    check_version(doc, "quotient file", kQuotientSchema);

    QuotientComplex q;
    q.vertices = parse_vertices(require(doc, "quotient file", "vertices"), "vertices");
    q.ev = parse_cells(require(doc, "quotient file", "ev"), "ev", q.vertices.npoints());
    q.fe = parse_cells(require(doc, "quotient file", "fe"), "fe", q.ev.size());

    const bool has_d0 = doc.contains("delta0");
    const bool has_d1 = doc.contains("delta1");
    if (has_d0 != has_d1) {
        throw SchemaError("SCHEMA_INVALID: delta0 and delta1 must be present together");
    }
    if (has_d0) {
        q.delta0 = parse_matrix(doc["delta0"], "delta0");
        q.delta1 = parse_matrix(doc["delta1"], "delta1");
        if (q.delta0->nrows() != q.ev.size() || q.delta0->ncols() != q.vertices.npoints()) {
            throw SchemaError("SCHEMA_INVALID: delta0 must be (#edges) x (#vertices)");
        }
        if (q.delta1->nrows() != q.fe.size() || q.delta1->ncols() != q.ev.size()) {
            throw SchemaError("SCHEMA_INVALID: delta1 must be (#faces) x (#edges)");
        }
        require_pattern_match(*q.delta0, q.ev, "delta0");
        require_pattern_match(*q.delta1, q.fe, "delta1");
    }

    const json& classes = require(doc, "quotient file", "classes");
    check_keys(classes, "classes", {"vertex", "edge", "face"});
    ClassSection vs = parse_class_section(require(classes, "classes", "vertex"), "classes.vertex",
                                          std::numeric_limits<index_t>::max(), false, false);
    ClassSection es = parse_class_section(require(classes, "classes", "edge"), "classes.edge",
                                          std::numeric_limits<index_t>::max(), true, has_d0);
    ClassSection fs = parse_class_section(require(classes, "classes", "face"), "classes.face",
                                          std::numeric_limits<index_t>::max(), true, has_d0);
    if (static_cast<index_t>(vs.classes.size()) != q.vertices.npoints()) {
        throw SchemaError("SCHEMA_INVALID: classes.vertex must hold one class per vertex");
    }
    if (static_cast<index_t>(es.classes.size()) != q.ev.size()) {
        throw SchemaError("SCHEMA_INVALID: classes.edge must hold one class per edge");
    }
    if (static_cast<index_t>(fs.classes.size()) != q.fe.size()) {
        throw SchemaError("SCHEMA_INVALID: classes.face must hold one class per face");
    }
    q.vclasses.classes = std::move(vs.classes);
    q.eclasses.partition.classes = std::move(es.classes);
    q.eclasses.signs = std::move(es.signs);
    q.dropped_edges = std::move(es.dropped);
    q.fclasses.partition.classes = std::move(fs.classes);
    q.fclasses.signs = std::move(fs.signs);
    q.dropped_faces = std::move(fs.dropped);

    q.vclasses.validate(q.vclasses.member_count(), "classes.vertex");
    q.eclasses.validate(q.eclasses.partition.member_count(), "classes.edge");
    q.fclasses.validate(q.fclasses.partition.member_count(), "classes.face");

    // Dropped entries are original (pre-renumbering) indices; they must fit
    // inside the implied input range.
    auto check_dropped = [](const std::vector<index_t>& dropped, index_t survivors,
                            const std::string& where) {
        const index_t input = survivors + static_cast<index_t>(dropped.size());
        if (!dropped.empty() && dropped.back() >= input) {
            throw SchemaError("SCHEMA_INVALID: " + where + ".dropped index " +
                              std::to_string(dropped.back() + 1) + " outside 1.." +
                              std::to_string(input));
        }
    };
    check_dropped(q.dropped_edges, q.eclasses.partition.member_count(), "classes.edge");
    check_dropped(q.dropped_faces, q.fclasses.partition.member_count(), "classes.face");
    return q;
}

std::string quotient_to_json(const QuotientComplex& q) {
    json doc;
    doc["schema_version"] = kQuotientSchema;
    doc["vertices"] = vertices_to_json(q.vertices);
    doc["ev"] = index_lists_to_json(q.ev.cells);
    doc["fe"] = index_lists_to_json(q.fe.cells);
    const bool sparse_output = q.delta0.has_value();
    if (sparse_output) {
        doc["delta0"] = matrix_to_json(*q.delta0);
        doc["delta1"] = matrix_to_json(*q.delta1);
    }

    auto class_section = [&](const ClassPartition& p, const std::vector<std::vector<std::int8_t>>& signs,
                             const std::vector<index_t>& dropped) {
        json obj;
        obj["classes"] = index_lists_to_json(p.classes);
        json drop = json::array();
        for (index_t d : dropped) drop.push_back(d + 1);
        obj["dropped"] = std::move(drop);
        if (sparse_output) {
            json sign_arr = json::array();
            for (const auto& row : signs) {
                json inner = json::array();
                for (std::int8_t s : row) inner.push_back(static_cast<int>(s));
                sign_arr.push_back(std::move(inner));
            }
            obj["signs"] = std::move(sign_arr);
        }
        return obj;
    };

    json classes;
    json vertex_section;
    vertex_section["classes"] = index_lists_to_json(q.vclasses.classes);
    classes["vertex"] = std::move(vertex_section);
    classes["edge"] = class_section(q.eclasses.partition, q.eclasses.signs, q.dropped_edges);
    classes["face"] = class_section(q.fclasses.partition, q.fclasses.signs, q.dropped_faces);
    doc["classes"] = std::move(classes);
    return emit_document(doc);
}

// ---------------------------------------------------------------------------
// Reports.

std::string report_to_json(const ValidationReport& report) {
    json doc;
    doc["schema_version"] = kReportSchema;
    doc["dd_zero"] = report.dd_zero ? json(*report.dd_zero) : json(nullptr);
    doc["euler"] = report.euler_value;
    doc["euler_expected"] =
        report.euler_expected ? json(*report.euler_expected) : json(nullptr);
    doc["partitions_ok"] = report.partitions_ok;
    doc["counts"] = json::array({report.counts[0], report.counts[1], report.counts[2]});
    doc["dropped"] = json::array({report.dropped[0], report.dropped[1], report.dropped[2]});
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back(v);
    doc["violations"] = std::move(violations);
    return emit_document(doc);
}

// ---------------------------------------------------------------------------
// File plumbing.

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("IO_ERROR: cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) {
        throw SchemaError("IO_ERROR: cannot write " + path.string());
    }
}

}  // namespace

AccumulatorComplex load_complex(const std::filesystem::path& path) {
    return complex_from_json(read_file(path));
}

void save_complex(const AccumulatorComplex& acc, const std::filesystem::path& path) {
    write_file(path, complex_to_json(acc));
}

QuotientComplex load_quotient(const std::filesystem::path& path) {
    return quotient_from_json(read_file(path));
}

void save_quotient(const QuotientComplex& q, const std::filesystem::path& path) {
    write_file(path, quotient_to_json(q));
}

void save_report(const ValidationReport& report, const std::filesystem::path& path) {
    write_file(path, report_to_json(report));
}

}  // namespace ccm
