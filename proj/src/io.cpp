#include "ballcomp/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ballcomp {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::ParseError,
             std::string("field '") + field + "': complex values are [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // canonical form never emits negative zero
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(Complex v) { return "[" + fmt(v.real()) + ", " + fmt(v.imag()) + "]"; }

}  // namespace

LinearFractionalMap parse_map_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, std::string("map-spec: ") + e.what());
    }
    for (const char* field : {"n", "A", "B", "C", "d"})
        if (!doc.contains(field))
            fail(ErrorKind::ParseError,
                 std::string("map-spec: missing field '") + field + "'");
    if (!doc["n"].is_number_integer())
        fail(ErrorKind::ParseError, "map-spec: field 'n' must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 1) fail(ErrorKind::ParseError, "map-spec: n must be >= 1");

    const json& ja = doc["A"];
    if (!ja.is_array() || static_cast<int>(ja.size()) != n)
        fail(ErrorKind::ParseError, "map-spec: A must have n rows");
    CMatrix A(n, n);
    for (int i = 0; i < n; ++i) {
        if (!ja[i].is_array() || static_cast<int>(ja[i].size()) != n)
            fail(ErrorKind::ParseError,
                 "map-spec: A row " + std::to_string(i) + " must have n entries");
        for (int j = 0; j < n; ++j) A(i, j) = parse_complex(ja[i][j], "A");
    }
    auto parse_column = [&](const char* field) {
        const json& jv = doc[field];
        if (!jv.is_array() || static_cast<int>(jv.size()) != n)
            fail(ErrorKind::ParseError,
                 std::string("map-spec: ") + field + " must have n entries");
        CVector v(n);
        for (int i = 0; i < n; ++i) v(i) = parse_complex(jv[i], field);
        return v;
    };
    const CVector B = parse_column("B");
    const CVector C = parse_column("C");
    const Complex d = parse_complex(doc["d"], "d");
    return LinearFractionalMap(A, B, C, d);
}

LinearFractionalMap load_map_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open map-spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_map_spec(buf.str());
}

std::string serialize_map_spec(const LinearFractionalMap& map) {
    const int n = map.dim();
    std::string out;
    out += "{\n  \"n\": " + std::to_string(n) + ",\n  \"A\": [";
    for (int i = 0; i < n; ++i) {
        out += i ? ",\n        [" : "[";
        for (int j = 0; j < n; ++j)
            out += fmt(Complex(map.A()(i, j))) + (j + 1 < n ? ", " : "");
        out += "]";
    }
    out += "],\n  \"B\": [";
    const CVector B = map.B(), C = map.C();
    for (int i = 0; i < n; ++i) out += fmt(B(i)) + (i + 1 < n ? ", " : "");
    out += "],\n  \"C\": [";
    for (int i = 0; i < n; ++i) out += fmt(C(i)) + (i + 1 < n ? ", " : "");
    out += "],\n  \"d\": " + fmt(Complex(map.d(), 0.0)) + "\n}\n";
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::ParseError, "cannot open output file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace ballcomp
