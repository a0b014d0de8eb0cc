#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tricluster/opoly.hpp"

namespace tricluster {

enum class ParseErrorKind { syntax, not_triangular, zero_degree };

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind k, std::string msg, int line, int column)
        : std::runtime_error(std::move(msg)), kind(k), line(line), column(column) {}
    ParseErrorKind kind;
    int line;
    int column;
};

/// One parsed coefficient: exact rational when the defining expression used
/// only integer/rational/decimal literals, otherwise an oracle (sqrt leaves).
/// `text` is a re-parsable rendering of the defining expression.
struct ParsedCoeff {
    bool exact = true;
    mpq_class value;
    OracleNumber oracle;
    std::string text;

    OracleNumber to_oracle() const { return exact ? OracleNumber::rational(value) : oracle; }
};

struct ParsedPoly {
    int arity = 0;
    std::map<std::vector<unsigned>, ParsedCoeff> terms;

    bool exact_rational() const;
    OraclePolynomial to_oracle_poly() const;
    std::string print(int index) const;
};

/// A triangular system in source form, one polynomial per line
/// ("f1 = ...", "f2 = ...", ...). Variables are z1..zn; coefficient literals
/// are integers, rationals p/q, decimals, and sqrt(k).
struct ParsedSystem {
    std::vector<ParsedPoly> polys;

    int dimension() const { return static_cast<int>(polys.size()); }
    bool exact_rational() const;
    TriangularSystem to_system() const;
    std::string print() const;
};

/// Parses system text; enforces triangularity (f_i may mention only z1..zi)
/// and deg_{z_i}(f_i) >= 1. Diagnostics carry line and column.
ParsedSystem parse_system(const std::string& src);

}  // namespace tricluster
