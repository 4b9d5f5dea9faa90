#pragma once

#include <iosfwd>
#include <string>

#include "permcert/certify.hpp"
#include "permcert/detrep.hpp"
#include "permcert/poset.hpp"

namespace permcert {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kSchemaVersion = "1";

// ---- poset DSL ----
// Line-oriented:   elem <id> rank <r>
//                  cover <lower-id> <upper-id> label <affine-expr>
// affine-expr := term ('+' term)* ; term := rational | rational '*' var | var
// var := 'x[' int ',' int ']' (second index may be negative). '#' comments.
struct PosetDoc {
    GradedLabeledPoset poset;
};

PosetDoc parse_poset(const std::string& text);            // throws ParseError
std::string serialize_poset(const GradedLabeledPoset& p); // parses back equal

// A single affine label expression (the poset grammar's <affine-expr>).
AffineForm parse_affine(const std::string& text);          // throws ParseError

// ---- matrices ----
// One row per line, whitespace-separated rationals "p" or "p/q". Blank lines
// are skipped; there are no comments. Shape must match exactly.
RatMatrix parse_matrix(const std::string& text, int rows, int cols);
std::string serialize_matrix(const RatMatrix& m);

// ---- documents (JSON, schema-versioned, rationals as "p/q" strings) ----
std::string serialize_detrep(const DetRep& d);
DetRep parse_detrep(const std::string& text);

std::string serialize_certificate(const HessianCertificate& c);
// Recovers exactly the fields certify --check revalidates.
struct CertificateDoc {
    FamilySpec spec;
    RatMatrix zero_point;
    Rat value;
    int hessian_dim = 0;
    int rank = 0;
    Rat lower_bound;
    int lower_bound_int = 0;
    int upper_bound = 0;
    bool structure_applicable = false;
    bool structure_pass = false;
};
CertificateDoc parse_certificate(const std::string& text);

std::string serialize_verify_report(const VerifyReport& r,
                                    const std::string& family);

// ---- CLI ----
// 0 success, 1 verification/certification check failure, 2 usage/parse/cap
// errors. All diagnostics go to err.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out,
                 std::ostream& err);

}  // namespace permcert
