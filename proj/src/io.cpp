#include "subrepro/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "subrepro/error.hpp"

namespace subrepro {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Rational json_rational(const Json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
    parse_fail("expected a rational as \"p/q\" string or integer, got " + v.dump());
}

std::int64_t json_int(const Json& v) {
    if (!v.is_number_integer()) parse_fail("expected an integer, got " + v.dump());
    return v.get<std::int64_t>();
}

Json rationals_to_json(const RationalVector& v) {
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(to_string(q));
    return arr;
}

RationalVector rationals_from_json(const Json& v) {
    if (!v.is_array()) parse_fail("expected an array of rationals");
    RationalVector out;
    for (const auto& x : v) out.push_back(json_rational(x));
    return out;
}

Json matrix_to_json(const std::vector<std::int64_t>& row_major, std::size_t n) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(row_major[i * n + j]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::int64_t> matrix_from_json(const Json& v, std::size_t& n) {
    if (!v.is_array() || v.empty()) parse_fail("dilation must be a non-empty array");
    std::vector<std::int64_t> out;
    if (v.front().is_array()) {
        n = v.size();
        for (const auto& row : v) {
            if (!row.is_array() || row.size() != n) parse_fail("dilation rows must form a square matrix");
            for (const auto& x : row) out.push_back(json_int(x));
        }
        return out;
    }
    for (const auto& x : v) out.push_back(json_int(x));
    n = 0;
    while (n * n < out.size()) ++n;
    if (n * n != out.size()) parse_fail("flat dilation must have a square number of entries");
    return out;
}

Index index_from_json(const Json& v) {
    if (!v.is_array()) parse_fail("index must be an integer array");
    Index out;
    for (const auto& x : v) out.push_back(json_int(x));
    return out;
}

Json index_to_json(const Index& v) {
    Json arr = Json::array();
    for (auto x : v) arr.push_back(x);
    return arr;
}

template <class F>
auto field(const Json& doc, const char* key, F&& convert) {
    if (!doc.contains(key)) parse_fail(std::string("missing field '") + key + "'");
    try {
        return convert(doc.at(key));
    } catch (const Json::exception& e) {
        parse_fail(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Mask files

MaskFile mask_from_json(const Json& doc) {
    if (!doc.is_object()) parse_fail("mask document must be a JSON object");
    MaskFile mask;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) parse_fail("name must be a string");
        mask.name = doc["name"].get<std::string>();
    }
    std::size_t n = 0;
    auto entries = field(doc, "dilation", [&](const Json& v) { return matrix_from_json(v, n); });
    mask.dilation = IntMatrix(n, std::move(entries));
    if (doc.contains("dim")) {
        const auto dim = json_int(doc["dim"]);
        if (dim != static_cast<std::int64_t>(n)) {
            throw Error(ErrorCode::DimensionMismatch, "dim " + std::to_string(dim) + " but dilation is " +
                                                          std::to_string(n) + "x" + std::to_string(n));
        }
    }
    if (!doc.contains("coefficients")) parse_fail("missing field 'coefficients'");
    const Json& coeffs = doc["coefficients"];
    if (!coeffs.is_array()) parse_fail("coefficients must be an array");
    mask.symbol = LaurentPoly(n);
    std::set<Index> seen;
    for (const auto& entry : coeffs) {
        if (!entry.is_object()) parse_fail("coefficient entries must be objects");
        const Index alpha = field(entry, "index", index_from_json);
        const Rational value = field(entry, "value", json_rational);
        if (alpha.size() != n) throw Error(ErrorCode::DimensionMismatch, "index " + to_string(alpha) + " has wrong length");
        if (!seen.insert(alpha).second) throw Error(ErrorCode::DuplicateIndex, "index " + to_string(alpha) + " repeated");
        mask.symbol.add_term(alpha, value);
    }
    if (doc.contains("tau") && !doc["tau"].is_null()) {
        mask.tau = rationals_from_json(doc["tau"]);
        if (mask.tau->size() != n) throw Error(ErrorCode::DimensionMismatch, "tau has the wrong length");
    }
    return mask;
}

Json mask_to_json(const MaskFile& mask) {
    Json doc;
    if (!mask.name.empty()) doc["name"] = mask.name;
    doc["dim"] = mask.dilation.dim();
    doc["dilation"] = matrix_to_json(mask.dilation.row_major(), mask.dilation.dim());
    Json coeffs = Json::array();
    for (const auto& [alpha, c] : mask.symbol.terms()) {
        Json e;
        e["index"] = index_to_json(alpha);
        e["value"] = to_string(c);
        coeffs.push_back(std::move(e));
    }
    doc["coefficients"] = std::move(coeffs);
    if (mask.tau) doc["tau"] = rationals_to_json(*mask.tau);
    return doc;
}

MaskFile read_mask_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        parse_fail(path.string() + ": " + e.what());
    }
    return mask_from_json(doc);
}

// ---------------------------------------------------------------------------
// Reports

Json report_to_json(const ReproductionReport& r) {
    Json doc;
    doc["name"] = r.name;
    std::size_t n = 0;
    while (n * n < r.dilation.size()) ++n;
    doc["dilation"] = matrix_to_json(r.dilation, n);
    doc["m"] = r.m;
    Json e = Json::array();
    for (const auto& x : r.E) e.push_back(index_to_json(x));
    doc["E"] = std::move(e);
    Json xi = Json::array();
    for (const auto& x : r.Xi) xi.push_back(rationals_to_json(x));
    doc["Xi"] = std::move(xi);
    doc["kZ"] = r.kZ;
    doc["kZCapped"] = r.kZ_capped;
    doc["tau"] = r.tau ? rationals_to_json(*r.tau) : Json(nullptr);
    doc["tauFromGradient"] = r.tau_from_gradient;
    doc["tauMeaningful"] = r.tau_meaningful;
    doc["kR"] = r.kR ? Json(*r.kR) : Json(nullptr);
    doc["kRCapped"] = r.kR_capped;
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
        Json item;
        item["kind"] = x.kind;
        item["j"] = x.j;
        item["epsilonIndex"] = x.epsilon_index;
        item["valueDescription"] = x.value_description;
        w.push_back(std::move(item));
    }
    doc["witnesses"] = std::move(w);
    doc["claimedApproxOrder"] = r.claimed_approx_order;
    doc["assumedConvergent"] = r.assumed_convergent;
    doc["expandingExact"] = r.expanding_exact;
    doc["notes"] = r.notes;
    return doc;
}

ReproductionReport report_from_json(const Json& doc) {
    if (!doc.is_object()) parse_fail("report must be a JSON object");
    ReproductionReport r;
    try {
        r.name = doc.at("name").get<std::string>();
        std::size_t n = 0;
        r.dilation = matrix_from_json(doc.at("dilation"), n);
        r.m = doc.at("m").get<std::int64_t>();
        for (const auto& x : doc.at("E")) r.E.push_back(index_from_json(x));
        for (const auto& x : doc.at("Xi")) r.Xi.push_back(rationals_from_json(x));
        r.kZ = doc.at("kZ").get<int>();
        r.kZ_capped = doc.at("kZCapped").get<bool>();
        if (!doc.at("tau").is_null()) r.tau = rationals_from_json(doc.at("tau"));
        r.tau_from_gradient = doc.at("tauFromGradient").get<bool>();
        r.tau_meaningful = doc.at("tauMeaningful").get<bool>();
        if (!doc.at("kR").is_null()) r.kR = doc.at("kR").get<int>();
        r.kR_capped = doc.at("kRCapped").get<bool>();
        for (const auto& x : doc.at("witnesses")) {
            r.witnesses.push_back(ReportWitness{x.at("kind").get<std::string>(), x.at("j").get<std::vector<int>>(),
                                                x.at("epsilonIndex").get<std::size_t>(),
                                                x.at("valueDescription").get<std::string>()});
        }
        r.claimed_approx_order = doc.at("claimedApproxOrder").get<int>();
        r.assumed_convergent = doc.at("assumedConvergent").get<bool>();
        r.expanding_exact = doc.at("expandingExact").get<bool>();
        r.notes = doc.at("notes").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
        parse_fail(std::string("report: ") + e.what());
    }
    return r;
}

std::string report_to_text(const ReproductionReport& r) {
    std::ostringstream os;
    if (!r.name.empty()) os << "symbol: " << r.name << '\n';
    std::size_t n = 0;
    while (n * n < r.dilation.size()) ++n;
    os << "dilation: " << matrix_to_json(r.dilation, n).dump() << '\n';
    os << "m: " << r.m << '\n';
    os << "E:";
    for (const auto& e : r.E) os << ' ' << to_string(e);
    os << "\nXi (exponents of exp(2 pi i *)):";
    for (const auto& x : r.Xi) os << ' ' << to_string(x);
    os << "\nkZ: " << r.kZ << (r.kZ_capped ? " (cap reached)" : "") << '\n';
    os << "tau: " << (r.tau ? to_string(*r.tau) : std::string("undefined"));
    if (r.tau && !r.tau_from_gradient) os << " (given)";
    if (r.tau && !r.tau_meaningful) os << " (not reproduction-meaningful)";
    os << "\nkR: " << (r.kR ? std::to_string(*r.kR) : std::string("undefined")) << (r.kR_capped ? " (cap reached)" : "")
       << '\n';
    for (const auto& w : r.witnesses) {
        os << "witness [" << w.kind << "] eps#" << w.epsilon_index << ": " << w.value_description << '\n';
    }
    os << "claimed approximation order: " << r.claimed_approx_order << '\n';
    os << "assumed convergent: " << (r.assumed_convergent ? "yes" : "no") << '\n';
    for (const auto& note : r.notes) os << "note: " << note << '\n';
    return os.str();
}

Json solution_to_json(const AffineSolution& sol) {
    Json doc;
    doc["basepoint"] = rationals_to_json(sol.basepoint);
    Json basis = Json::array();
    for (const auto& b : sol.basis) basis.push_back(rationals_to_json(b));
    doc["basis"] = std::move(basis);
    doc["freeColumns"] = sol.free_columns;
    Json tau = Json::array();
    for (const auto& t : sol.tau) tau.push_back(to_string(t, "t"));
    doc["tau"] = std::move(tau);
    Json res = Json::array();
    for (const auto& r : sol.residuals) {
        Json item;
        item["j"] = r.j.values();
        item["polynomial"] = to_string(r.poly, "t");
        res.push_back(std::move(item));
    }
    doc["residuals"] = std::move(res);
    return doc;
}

// ---------------------------------------------------------------------------
// Polynomial micro-grammar

namespace {

class PolyParser {
   public:
    PolyParser(std::string_view text, std::size_t dim) : dim_(dim) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }

    PolySpec parse() {
        if (src_.empty()) fail("empty polynomial");
        LaurentPoly sum(dim_);
        bool first = true;
        while (pos_ < src_.size() || first) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [c, e] = term();
            sum.add_term(e, sign * c);
        }
        return PolySpec(sum);
    }

   private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::ParseError, "polynomial '" + src_ + "' at position " + std::to_string(pos_) + ": " + what);
    }

    Integer digits() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(src_.substr(start, pos_ - start), 10);
    }

    std::pair<Rational, Index> term() {
        Rational c = 1;
        Index e(dim_, 0);
        while (true) {
            if (peek() == 'x') {
                ++pos_;
                const Integer var = digits();
                if (var < 1 || var > static_cast<long>(dim_)) fail("variable index out of range 1.." + std::to_string(dim_));
                Integer power = 1;
                if (peek() == '^') {
                    ++pos_;
                    power = digits();
                }
                e[var.get_ui() - 1] += power.get_si();
            } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
                Rational value(digits());
                if (peek() == '/') {
                    ++pos_;
                    const Integer den = digits();
                    if (den == 0) fail("zero denominator");
                    value /= den;
                }
                c *= value;
            } else {
                fail("expected a number or a variable x<i>");
            }
            if (peek() != '*') break;
            ++pos_;
        }
        return {c, e};
    }

    std::string src_;
    std::size_t pos_ = 0;
    std::size_t dim_;
};

}  // namespace

PolySpec parse_poly_spec(std::string_view text, std::size_t dim) { return PolyParser(text, dim).parse(); }

}  // namespace subrepro
