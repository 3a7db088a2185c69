#include "qsys/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace qsys {

namespace {

using nlohmann::ordered_json;

Integer parse_integer(const ordered_json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Integer(j.get<long long>());
        if (j.is_string()) return Integer(j.get<std::string>());
    } catch (const std::exception& e) {
        throw MatrixParseError(where, e.what());
    }
    throw MatrixParseError(where, "expected an integer or a decimal string");
}

Rational parse_rational(const ordered_json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 2) throw MatrixParseError(where, "rational pair must have two entries");
        Integer num = parse_integer(j[0], where + "[0]");
        Integer den = parse_integer(j[1], where + "[1]");
        if (den == 0) throw MatrixParseError(where, "zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    return Rational(parse_integer(j, where));
}

FieldElement parse_element(const ordered_json& j, long d, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw MatrixParseError(where, "field element must be an [x, y] array");
    return FieldElement(parse_rational(j[0], where + "[0]"), parse_rational(j[1], where + "[1]"), d);
}

ordered_json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return ordered_json(v.get_si());
    return ordered_json(v.get_str());
}

ordered_json rational_json(const Rational& r) {
    return ordered_json::array({integer_json(r.get_num()), integer_json(r.get_den())});
}

ordered_json element_json(const FieldElement& e) {
    return ordered_json::array({rational_json(e.x()), rational_json(e.y())});
}

}  // namespace

MatrixFileData parse_matrix_file(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MatrixParseError("document", e.what());
    }
    if (!doc.is_object()) throw MatrixParseError("document", "top level must be an object");
    for (const char* key : {"d", "delta", "gamma", "a", "n", "entries"})
        if (!doc.contains(key)) throw MatrixParseError(key, "missing field");

    MatrixFileData out;
    if (!doc["d"].is_number_integer()) throw MatrixParseError("d", "expected an integer");
    out.d = doc["d"].get<long>();
    RealQuadraticField k(out.d);  // validates d

    out.delta = parse_element(doc["delta"], out.d, "delta");
    out.gamma = parse_element(doc["gamma"], out.d, "gamma");
    out.form_a = parse_element(doc["a"], out.d, "a");
    if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
        throw MatrixParseError("n", "expected an integer >= 1");
    out.n = doc["n"].get<unsigned>();

    const std::size_t m = out.n + 1;
    const ordered_json& rows = doc["entries"];
    if (!rows.is_array() || rows.size() != m)
        throw MatrixParseError("entries", "expected " + std::to_string(m) + " rows");
    out.entries = ExactQuatMatrix(m);
    for (std::size_t i = 0; i < m; ++i) {
        const ordered_json& row = rows[i];
        std::string rw = "entries[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != m)
            throw MatrixParseError(rw, "expected " + std::to_string(m) + " entries");
        for (std::size_t j = 0; j < m; ++j) {
            const ordered_json& cell = row[j];
            std::string cw = rw + "[" + std::to_string(j) + "]";
            if (!cell.is_array() || cell.size() != 4)
                throw MatrixParseError(cw, "expected a coordinate 4-tuple");
            out.entries(i, j) = ExactQuaternion(
                parse_element(cell[0], out.d, cw + "[0]"), parse_element(cell[1], out.d, cw + "[1]"),
                parse_element(cell[2], out.d, cw + "[2]"), parse_element(cell[3], out.d, cw + "[3]"));
        }
    }
    return out;
}

std::string serialize_matrix_file(const MatrixFileData& data) {
    ordered_json doc;
    doc["d"] = data.d;
    doc["delta"] = element_json(data.delta);
    doc["gamma"] = element_json(data.gamma);
    doc["a"] = element_json(data.form_a);
    doc["n"] = data.n;
    ordered_json rows = ordered_json::array();
    const std::size_t m = data.entries.size();
    for (std::size_t i = 0; i < m; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m; ++j) {
            const ExactQuaternion& q = data.entries(i, j);
            row.push_back(ordered_json::array(
                {element_json(q.x0), element_json(q.x1), element_json(q.x2), element_json(q.x3)}));
        }
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump(1);
}

namespace {

Rational parse_rational_token(const std::string& text, const std::string& token) {
    if (text.empty() || text == "+") return Rational(1);
    if (text == "-") return Rational(-1);
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw MatrixParseError(token, "malformed rational '" + text + "'");
    if (r.get_den() == 0) throw MatrixParseError(token, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

}  // namespace

FieldElement parse_field_element_token(const std::string& token, long expect_d) {
    std::size_t s_pos = token.find('s');
    if (token.find('s', s_pos + 1) != std::string::npos)
        throw MatrixParseError(token, "more than one 's' marker");

    if (s_pos == std::string::npos)
        return FieldElement(parse_rational_token(token, token), 0, expect_d);

    const std::string d_text = token.substr(s_pos + 1);
    if (d_text.empty() || d_text.find_first_not_of("0123456789") != std::string::npos)
        throw MatrixParseError(token, "expected a positive integer after 's'");
    if (std::stol(d_text) != expect_d)
        throw MatrixParseError(token, "token names sqrt(" + d_text + ") but d = " + std::to_string(expect_d));

    std::string head = token.substr(0, s_pos);
    // split x from y at the last top-level sign, if any
    std::size_t split = std::string::npos;
    for (std::size_t i = head.size(); i-- > 1;) {
        char c = head[i];
        char prev = head[i - 1];
        if ((c == '+' || c == '-') && prev != '/' && prev != '+' && prev != '-') {
            split = i;
            break;
        }
    }
    std::string x_text, y_text;
    if (split == std::string::npos) {
        y_text = head;
    } else {
        x_text = head.substr(0, split);
        y_text = head.substr(split);
    }
    Rational x = x_text.empty() ? Rational(0) : parse_rational_token(x_text, token);
    Rational y = parse_rational_token(y_text, token);
    return FieldElement(std::move(x), std::move(y), expect_d);
}

std::string field_element_token(const FieldElement& e) {
    auto rat = [](const Rational& r) {
        return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
    };
    if (e.y() == 0) return rat(e.x());
    std::string out;
    if (e.x() != 0) {
        out = rat(e.x());
        if (sgn(e.y()) >= 0) out += "+";
    }
    out += rat(e.y()) + "s" + std::to_string(e.d());
    return out;
}

std::string format_double12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) {
    return std::strtod(format_double12(v).c_str(), nullptr);
}

}  // namespace qsys
