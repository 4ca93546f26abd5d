#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lcdt {

// Every failure the library can diagnose carries a stable machine-readable
// code alongside the human-readable message.  The CLI maps these to exit
// status 1 and a JSON error object; callers can dispatch on code() without
// parsing message text.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// field construction
struct NonPrimeCharacteristic : Error {
    explicit NonPrimeCharacteristic(const std::string& w) : Error("NonPrimeCharacteristic", w) {}
};
struct ReducibleModulus : Error {
    explicit ReducibleModulus(const std::string& w) : Error("ReducibleModulus", w) {}
};
struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& w) : Error("DegreeMismatch", w) {}
};

// element arithmetic
struct MixedFields : Error {
    explicit MixedFields(const std::string& w) : Error("MixedFields", w) {}
};
struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& w) : Error("DivisionByZero", w) {}
};

// embeddings and roots
struct NoEmbedding : Error {
    explicit NoEmbedding(const std::string& w) : Error("NoEmbedding", w) {}
};
struct RootObstruction : Error {
    explicit RootObstruction(const std::string& w) : Error("RootObstruction", w) {}
};
struct NotABasis : Error {
    explicit NotABasis(const std::string& w) : Error("NotABasis", w) {}
};

// linear algebra
struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& w) : Error("SingularMatrix", w) {}
};
struct NotSquare : Error {
    explicit NotSquare(const std::string& w) : Error("NotSquare", w) {}
};

// code construction
struct ZeroOffDiagonal : Error {
    explicit ZeroOffDiagonal(const std::string& w) : Error("ZeroOffDiagonal", w) {}
};
struct RankDeficientGenerator : Error {
    explicit RankDeficientGenerator(const std::string& w) : Error("RankDeficientGenerator", w) {}
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& w) : Error("BudgetExceeded", w) {}
};
struct EmptyCode : Error {
    explicit EmptyCode(const std::string& w) : Error("EmptyCode", w) {}
};

// concatenation
struct NotAnIsometry : Error {
    explicit NotAnIsometry(const std::string& w) : Error("NotAnIsometry", w) {}
};
struct LengthTooShort : Error {
    explicit LengthTooShort(const std::string& w) : Error("LengthTooShort", w) {}
};
struct OuterNotLCD : Error {
    explicit OuterNotLCD(const std::string& w) : Error("OuterNotLCD", w) {}
};
struct NotFound : Error {
    explicit NotFound(const std::string& w) : Error("NotFound", w) {}
};

// input syntax (CLI specs, element literals)
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

// a mathematical postcondition failed; indicates a bug, not bad input
struct InternalInvariant : Error {
    explicit InternalInvariant(const std::string& w) : Error("InternalInvariant", w) {}
};

// active in every build type, unlike assert
inline void check(bool cond, const char* what) {
    if (!cond) throw InternalInvariant(what);
}

} // namespace lcdt
