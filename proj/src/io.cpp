#include "permcert/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "permcert/errors.hpp"
#include "permcert/linalg.hpp"

namespace permcert {

namespace {

using ordered_json = nlohmann::ordered_json;

bool word_char(char c) { return !std::isspace(static_cast<unsigned char>(c)); }

// Cursor over one source line; cols are 1-based for error reporting.
struct LineScanner {
    std::string_view s;
    size_t pos = 0;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < s.size() &&
               std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    std::string_view token() {
        skip_ws();
        const size_t start = pos;
        while (pos < s.size() && word_char(s[pos])) ++pos;
        if (pos == start) fail("expected a token");
        return s.substr(start, pos - start);
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    }
    int integer() {
        skip_ws();
        const size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == start ||
            (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                     s[start]))))
            fail("expected an integer");
        try {
            return std::stoi(std::string(s.substr(start, pos - start)));
        } catch (const std::out_of_range&) {
            pos = start;
            fail("integer out of range");
        }
    }
    Rat rational() {
        skip_ws();
        const size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            while (pos < s.size() &&
                   std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
        }
        const std::string text(s.substr(start, pos - start));
        try {
            return Rat::parse(text);
        } catch (const std::invalid_argument&) {
            pos = start;
            fail("expected a rational number");
        }
    }
};

VarId parse_var_at(LineScanner& sc) {
    sc.skip_ws();
    if (sc.peek() != 'x') sc.fail("expected a variable 'x[row,col]'");
    ++sc.pos;
    sc.expect('[');
    const int row = sc.integer();
    sc.expect(',');
    const int col = sc.integer();
    sc.expect(']');
    if (row < 1) sc.fail("variable row must be >= 1");
    if (col == 0) sc.fail("variable column must be nonzero");
    return {row, col};
}

AffineForm parse_affine_at(LineScanner& sc) {
    AffineForm f;
    while (true) {
        sc.skip_ws();
        if (sc.peek() == 'x') {
            f.add_term(parse_var_at(sc), Rat(1));
        } else {
            const Rat coeff = sc.rational();
            if (sc.peek() == '*') {
                ++sc.pos;
                f.add_term(parse_var_at(sc), coeff);
            } else {
                f.add_constant(coeff);
            }
        }
        if (sc.peek() != '+') break;
        ++sc.pos;
    }
    return f;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace

AffineForm parse_affine(const std::string& text) {
    LineScanner sc{text, 0, 1};
    AffineForm f = parse_affine_at(sc);
    if (!sc.at_end()) sc.fail("unexpected trailing text");
    return f;
}

PosetDoc parse_poset(const std::string& text) {
    PosetDoc doc;
    std::map<std::string, int> ids;
    std::istringstream lines(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        LineScanner sc{raw, 0, lineno};
        if (sc.at_end()) continue;
        const std::string_view head = sc.token();
        if (head == "elem") {
            const std::string id(sc.token());
            const std::string_view kw = sc.token();
            if (kw != "rank") sc.fail("expected 'rank'");
            const int r = sc.integer();
            if (!sc.at_end()) sc.fail("unexpected trailing text");
            if (!ids.emplace(id, static_cast<int>(doc.poset.elements.size()))
                     .second)
                throw ParseError("duplicate element id " + id, lineno, 1);
            doc.poset.elements.push_back({id, r});
            doc.poset.rank_d = std::max(doc.poset.rank_d, r);
        } else if (head == "cover") {
            const std::string lo(sc.token());
            const std::string hi(sc.token());
            const std::string_view kw = sc.token();
            if (kw != "label") sc.fail("expected 'label'");
            if (!ids.count(lo))
                throw ParseError("unknown element id " + lo + " in cover",
                                 lineno, 1);
            if (!ids.count(hi))
                throw ParseError("unknown element id " + hi + " in cover",
                                 lineno, 1);
            AffineForm label = parse_affine_at(sc);
            if (!sc.at_end()) sc.fail("unexpected trailing text");
            doc.poset.covers.push_back({lo, hi, std::move(label)});
        } else {
            throw ParseError("unknown directive '" + std::string(head) + "'",
                             lineno, 1);
        }
    }
    return doc;
}

std::string serialize_poset(const GradedLabeledPoset& p) {
    std::string out;
    for (const auto& e : p.elements)
        out += "elem " + e.id + " rank " + std::to_string(e.rank) + "\n";
    for (const auto& c : p.covers)
        out += "cover " + c.lower + " " + c.upper + " label " + c.label.str() +
               "\n";
    return out;
}

RatMatrix parse_matrix(const std::string& text, int rows, int cols) {
    std::vector<std::vector<Rat>> parsed;
    std::istringstream lines(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        LineScanner sc{raw, 0, lineno};
        if (sc.at_end()) continue;
        std::vector<Rat> row;
        while (!sc.at_end()) row.push_back(sc.rational());
        if (static_cast<int>(row.size()) != cols)
            throw ParseError("expected " + std::to_string(cols) +
                                 " entries in row, found " +
                                 std::to_string(row.size()),
                             lineno, 1);
        parsed.push_back(std::move(row));
    }
    if (static_cast<int>(parsed.size()) != rows)
        throw ParseError("expected " + std::to_string(rows) +
                             " rows, found " + std::to_string(parsed.size()),
                         lineno == 0 ? 1 : lineno, 1);
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = parsed[i][j];
    return m;
}

std::string serialize_matrix(const RatMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (j) out += " ";
            out += m.at(i, j).str();
        }
        out += "\n";
    }
    return out;
}

std::string serialize_detrep(const DetRep& d) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "detrep";
    j["family"] = d.family;
    j["size"] = d.matrix.size;
    j["chain_degree"] = d.chain_degree;
    j["sign_fixed"] = d.sign_fixed;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < d.matrix.size; ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < d.matrix.size; ++k)
            row.push_back(d.matrix.at(i, k).str());
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j.dump(2) + "\n";
}

namespace {

ordered_json parse_json_doc(const std::string& text, const std::string& kind) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, 1);
    }
    if (!j.is_object() || j.value("schema", "") != kSchemaVersion ||
        j.value("kind", "") != kind)
        throw ParseError("expected a schema " + std::string(kSchemaVersion) +
                             " " + kind + " document",
                         1, 1);
    return j;
}

}  // namespace

DetRep parse_detrep(const std::string& text) {
    const ordered_json j = parse_json_doc(text, "detrep");
    DetRep d;
    try {
        d.family = j.at("family").get<std::string>();
        d.chain_degree = j.at("chain_degree").get<int>();
        d.sign_fixed = j.at("sign_fixed").get<bool>();
        const int size = j.at("size").get<int>();
        const auto& rows = j.at("matrix");
        if (size < 0 || static_cast<int>(rows.size()) != size)
            throw ParseError("matrix does not match declared size", 1, 1);
        d.matrix = AffineMatrix(size);
        for (int i = 0; i < size; ++i) {
            const auto& row = rows.at(i);
            if (static_cast<int>(row.size()) != size)
                throw ParseError("matrix does not match declared size", 1, 1);
            for (int k = 0; k < size; ++k)
                d.matrix.at(i, k) =
                    parse_affine(row.at(k).get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed detrep document: ") + e.what(),
                         1, 1);
    }
    return d;
}

namespace {

ordered_json family_json(const FamilySpec& spec) {
    ordered_json f;
    switch (spec.kind) {
        case FamilyKind::perm:
            f["kind"] = "perm";
            break;
        case FamilyKind::hoperm:
            f["kind"] = "hoperm";
            break;
        case FamilyKind::mperm:
            f["kind"] = "mperm";
            break;
    }
    f["n"] = spec.n;
    if (!spec.is_hoperm()) f["composition"] = spec.comp;
    return f;
}

std::vector<std::string> matrix_rows(const RatMatrix& m) {
    std::vector<std::string> rows;
    rows.reserve(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        std::string line;
        for (int j = 0; j < m.cols; ++j) {
            if (j) line += " ";
            line += m.at(i, j).str();
        }
        rows.push_back(std::move(line));
    }
    return rows;
}

}  // namespace

std::string serialize_certificate(const HessianCertificate& c) {
    ordered_json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "certificate";
    j["tool_version"] = kToolVersion;
    j["family"] = family_json(c.spec);
    if (c.input_comp != c.spec.comp) j["input_composition"] = c.input_comp;

    ordered_json z;
    if (c.zero.ell != 0) {
        z["case"] = c.zero.ell;
        if (c.zero.ell == 1) {
            z["c"] = c.zero.c;
            z["max_part"] = c.zero.max_part;
            z["d"] = c.zero.d.str();
        }
    }
    z["matrix"] = matrix_rows(c.zero.point);
    j["zero_point"] = std::move(z);

    j["value"] = c.value.str();
    j["hessian_dim"] = c.hessian_dim;
    j["rank"] = c.rank;
    j["lower_bound"] = c.lower_bound.str();
    j["lower_bound_int"] = c.lower_bound_int;
    j["upper_bound"] = c.upper_bound;

    ordered_json order = ordered_json::array();
    for (const VarId& v : c.order) order.push_back(var_name(v));
    j["variable_order"] = std::move(order);

    ordered_json sc;
    sc["applicable"] = c.structure_applicable;
    sc["pass"] = c.structure_pass;
    if (!c.structure_note.empty()) sc["note"] = c.structure_note;
    j["structure_check"] = std::move(sc);

    j["seeds"] = ordered_json::array();  // certification is deterministic
    return j.dump(2) + "\n";
}

CertificateDoc parse_certificate(const std::string& text) {
    const ordered_json j = parse_json_doc(text, "certificate");
    CertificateDoc doc;
    try {
        const auto& f = j.at("family");
        const std::string kind = f.at("kind").get<std::string>();
        if (kind == "hoperm") {
            doc.spec = FamilySpec::hoperm(f.at("n").get<int>());
        } else {
            doc.spec =
                FamilySpec::mperm(f.at("composition").get<std::vector<int>>());
            if (kind == "perm") doc.spec.kind = FamilyKind::perm;
        }
        std::string joined;
        for (const auto& row : j.at("zero_point").at("matrix"))
            joined += row.get<std::string>() + "\n";
        doc.zero_point =
            parse_matrix(joined, doc.spec.rows(), doc.spec.cols());
        doc.value = Rat::parse(j.at("value").get<std::string>());
        doc.hessian_dim = j.at("hessian_dim").get<int>();
        doc.rank = j.at("rank").get<int>();
        doc.lower_bound = Rat::parse(j.at("lower_bound").get<std::string>());
        doc.lower_bound_int = j.at("lower_bound_int").get<int>();
        doc.upper_bound = j.at("upper_bound").get<int>();
        doc.structure_applicable =
            j.at("structure_check").at("applicable").get<bool>();
        doc.structure_pass = j.at("structure_check").at("pass").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(
            std::string("malformed certificate document: ") + e.what(), 1, 1);
    }
    return doc;
}

std::string serialize_verify_report(const VerifyReport& r,
                                    const std::string& family) {
    std::string out;
    out += "family: " + family + "\n";
    out += "trials: " + std::to_string(r.trials) + "\n";
    out += "seed: " + std::to_string(r.seed) + "\n";
    out += "bound: " + std::to_string(r.bound) + "\n";
    for (int t = 0; t < r.trials; ++t)
        out += "trial " + std::to_string(t) + ": " +
               (r.trial_ok[t] ? "pass" : "FAIL") + "\n";
    out += std::string("result: ") + (r.pass ? "PASS" : "FAIL") + "\n";
    if (!r.pass) {
        out += "failing_trial: " + std::to_string(r.witness_trial) + "\n";
        out += "witness:\n";
        for (const auto& [v, val] : r.witness)
            out += "  " + var_name(v) + " = " + val.str() + "\n";
        out += "det_value: " + r.det_value.str() + "\n";
        out += "reference_value: " + r.ref_value.str() + "\n";
    }
    return out;
}

namespace {

struct FamilyOpts {
    std::string family;
    int n = 0;
    std::string comp;

    void attach(CLI::App* cmd, bool required = true) {
        auto* f = cmd->add_option("--family", family,
                                  "family: perm, hoperm, or mperm")
                      ->check(CLI::IsMember({"perm", "hoperm", "mperm"}));
        if (required) f->required();
        cmd->add_option("--n", n, "size for perm/hoperm");
        cmd->add_option("--comp", comp,
                        "comma-separated mperm multiplicities, e.g. 2,1");
    }

    FamilySpec make() const {
        if (family == "mperm") {
            if (comp.empty())
                throw ShapeError("mperm requires --comp");
            std::vector<int> parts;
            std::stringstream ss(comp);
            std::string piece;
            while (std::getline(ss, piece, ',')) {
                try {
                    size_t used = 0;
                    const int v = std::stoi(piece, &used);
                    if (used != piece.size()) throw std::invalid_argument(piece);
                    parts.push_back(v);
                } catch (const std::exception&) {
                    throw ShapeError("bad composition entry '" + piece + "'");
                }
            }
            return FamilySpec::mperm(parts);
        }
        if (!comp.empty())
            throw ShapeError(family + " takes --n, not --comp");
        if (family == "hoperm") return FamilySpec::hoperm(n);
        return FamilySpec::perm(n);
    }
};

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{"exact evaluation, determinantal representations, and "
                 "Hessian rank certificates for permanent-type families"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    int exit_code = 0;

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a family exactly");
    FamilyOpts eval_fam;
    eval_fam.attach(eval_cmd);
    std::string eval_matrix;
    std::string eval_method = "rec";
    eval_cmd->add_option("--matrix", eval_matrix, "point matrix file")
        ->required();
    eval_cmd->add_option("--method", eval_method, "brute or rec")
        ->check(CLI::IsMember({"brute", "rec"}));
    eval_cmd->callback([&]() {
        const FamilySpec spec = eval_fam.make();
        const RatMatrix x =
            parse_matrix(read_file(eval_matrix), spec.rows(), spec.cols());
        const Rat v = eval_method == "brute" ? eval_brute(spec, x)
                                             : eval_recurrence(spec, x);
        out << v.str() << "\n";
    });

    // special
    auto* special_cmd =
        app.add_subcommand("special", "print a special value or point");
    FamilyOpts special_fam;
    special_fam.attach(special_cmd);
    std::string special_what;
    special_cmd->add_option("what", special_what, "ones or zero")
        ->required()
        ->check(CLI::IsMember({"ones", "zero"}));
    special_cmd->callback([&]() {
        const FamilySpec spec = special_fam.make();
        if (special_what == "ones") {
            out << ones_value(spec).str() << "\n";
            return;
        }
        const ZeroPointInfo z = zero_point(spec);
        out << serialize_matrix(z.point);
        if (z.ell == 2) {
            err << "case: 2 (all parts equal)\n";
        } else if (z.ell == 1) {
            err << "case: 1 c: " << z.c << " max_part: " << z.max_part
                << " d: " << z.d.str() << "\n";
        }
    });

    // detrep build / verify
    auto* detrep_cmd =
        app.add_subcommand("detrep", "determinantal representations");
    detrep_cmd->require_subcommand(1);
    auto* build_cmd = detrep_cmd->add_subcommand(
        "build", "compile a family or poset to an affine matrix");
    FamilyOpts build_fam;
    build_fam.attach(build_cmd, /*required=*/false);
    std::string build_poset, build_out;
    build_cmd->add_option("--poset", build_poset, "poset DSL file");
    build_cmd->add_option("--out", build_out, "output file (default stdout)");
    build_cmd->callback([&]() {
        DetRep d;
        if (!build_poset.empty()) {
            if (!build_fam.family.empty())
                throw ShapeError("give either --poset or --family, not both");
            d = grenet_build(parse_poset(read_file(build_poset)).poset);
        } else if (!build_fam.family.empty()) {
            d = build_family_detrep(build_fam.make());
        } else {
            throw ShapeError("detrep build needs --family or --poset");
        }
        const std::string doc = serialize_detrep(d);
        if (build_out.empty())
            out << doc;
        else
            write_file(build_out, doc);
    });

    auto* verify_cmd = detrep_cmd->add_subcommand(
        "verify", "randomized check of a representation against its family");
    FamilyOpts verify_fam;
    verify_fam.attach(verify_cmd);
    std::string verify_file;
    int verify_trials = 20;
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--detrep", verify_file, "detrep document file")
        ->required();
    verify_cmd->add_option("--trials", verify_trials, "number of trials");
    verify_cmd->add_option("--seed", verify_seed, "PRNG seed");
    verify_cmd->callback([&]() {
        const FamilySpec spec = verify_fam.make();
        const DetRep d = parse_detrep(read_file(verify_file));
        const VerifyReport rep = verify_detrep(
            d, family_reference(spec), verify_trials, verify_seed);
        out << serialize_verify_report(rep, spec.display_name());
        if (!rep.pass) exit_code = 1;
    });

    // hessian
    auto* hessian_cmd = app.add_subcommand(
        "hessian", "second-derivative matrix and its exact rank");
    FamilyOpts hessian_fam;
    hessian_fam.attach(hessian_cmd);
    std::string hessian_point;
    hessian_cmd->add_option("--point", hessian_point,
                            "point matrix file (default: the family zero)");
    hessian_cmd->callback([&]() {
        const FamilySpec spec = hessian_fam.make();
        const RatMatrix x =
            hessian_point.empty()
                ? zero_point(spec).point
                : parse_matrix(read_file(hessian_point), spec.rows(),
                               spec.cols());
        const RatMatrix h = hessian_at(spec, x);
        out << serialize_matrix(h);
        out << "rank: " << rank(h) << "\n";
    });

    // certify
    auto* certify_cmd = app.add_subcommand(
        "certify", "lower-bound certificate from the Hessian rank at a zero");
    FamilyOpts certify_fam;
    certify_fam.attach(certify_cmd, /*required=*/false);
    std::string certify_out, certify_check;
    certify_cmd->add_option("--out", certify_out,
                            "output file (default stdout)");
    certify_cmd->add_option("--check", certify_check,
                            "revalidate a stored certificate");
    certify_cmd->callback([&]() {
        if (!certify_check.empty()) {
            const CertificateDoc doc =
                parse_certificate(read_file(certify_check));
            std::vector<std::string> bad;
            const Rat value = eval_recurrence(doc.spec, doc.zero_point);
            if (value != doc.value)
                bad.push_back("stored value " + doc.value.str() +
                              ", recomputed " + value.str());
            if (!value.is_zero())
                bad.push_back("family does not vanish at the stored point");
            const RatMatrix h = hessian_at(doc.spec, doc.zero_point);
            if (h.rows != doc.hessian_dim)
                bad.push_back("stored hessian_dim " +
                              std::to_string(doc.hessian_dim) +
                              ", recomputed " + std::to_string(h.rows));
            const int r = rank(h);
            if (r != doc.rank)
                bad.push_back("stored rank " + std::to_string(doc.rank) +
                              ", recomputed " + std::to_string(r));
            if (doc.lower_bound != Rat(Int(r), Int(2)) ||
                doc.lower_bound_int != (r + 1) / 2)
                bad.push_back("stored bounds disagree with recomputed rank");
            if (Int(doc.upper_bound) != upper_bound(doc.spec))
                bad.push_back("stored upper_bound " +
                              std::to_string(doc.upper_bound) +
                              ", recomputed " +
                              upper_bound(doc.spec).get_str());
            if (bad.empty()) {
                out << "check: OK (" << doc.spec.display_name() << ", rank "
                    << r << ")\n";
            } else {
                out << "check: FAIL (" << doc.spec.display_name() << ")\n";
                for (const auto& b : bad) out << "  " << b << "\n";
                exit_code = 1;
            }
            return;
        }
        if (certify_fam.family.empty())
            throw ShapeError("certify needs --family or --check");
        const HessianCertificate cert =
            certify_lower_bound(certify_fam.make());
        const std::string doc = serialize_certificate(cert);
        if (certify_out.empty())
            out << doc;
        else
            write_file(certify_out, doc);
    });

    // upper-bound
    auto* ub_cmd = app.add_subcommand(
        "upper-bound", "representation size from the lattice compiler");
    FamilyOpts ub_fam;
    ub_fam.attach(ub_cmd);
    ub_cmd->callback(
        [&]() { out << upper_bound(ub_fam.make()).get_str() << "\n"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PosetError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingAssignment& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace permcert
