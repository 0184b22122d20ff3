#pragma once

#include <stdexcept>
#include <string>

namespace fkmm {

enum class Errc {
    UnsupportedSpace,
    OddResolution,
    UnsupportedDimension,
    BadSelector,
    NoTRDirection,
    GapClosed,
    RankMismatch,
    NotAntisymmetric,
    NotAdmissible,
    NumericalInconsistency,
    NoIsolatedFixedPoints,
    NotFree,
    OddChernParity,
    SyntaxError,
    UnknownSymbol,
    ArityError,
    BadModelFile,
    BadArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// Parse failures keep the 1-based position so callers can point at the text.
class ParseError : public Error {
public:
    ParseError(Errc code, const std::string& what, int line, int column)
        : Error(code, what + " at line " + std::to_string(line) + ", column " +
                          std::to_string(column)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace fkmm
