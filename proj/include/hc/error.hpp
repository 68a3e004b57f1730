#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hc {

enum class Errc {
    MismatchedOrder,
    NotInvertible,
    NonzeroConstantTerm,
    IndexOutOfRange,
    AlgebraMismatch,
    NoDecomposition,
    UnknownGenerator,
    RankMismatch,
    DeformedInput,
    NonNilpotentArgument,
    BadPlacement,
    MissingCoassociator,
    MissingR,
    BadDimension,
    NotACocycle,
    NoSolutionWithinCaps,
    GeneratorMismatch,
    IncompatibleIso,
    ResidualNotCocycle,
    DivergentContraction,
    DimensionTooLarge,
    WindowExceeded,
    InvalidRewriteSystem,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    // Free-form witness strings (violating monomials, generator pairs, ...).
    std::vector<std::string> witnesses;

private:
    Errc code_;
};

} // namespace hc
