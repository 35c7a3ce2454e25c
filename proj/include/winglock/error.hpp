#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace winglock {

enum class Errc {
    DegenerateFacet,
    NotCoplanar,
    StepTooCoarse,
    WingOverflow,
    ClearanceTooLarge,
    BuildOverlap,
    EmptySection,
    NotABeltFace,
    SolverFailure,
    ParseError,
    SchemaVersionMismatch,
    InputError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DegenerateFacet: return "DegenerateFacet";
        case Errc::NotCoplanar: return "NotCoplanar";
        case Errc::StepTooCoarse: return "StepTooCoarse";
        case Errc::WingOverflow: return "WingOverflow";
        case Errc::ClearanceTooLarge: return "ClearanceTooLarge";
        case Errc::BuildOverlap: return "BuildOverlap";
        case Errc::EmptySection: return "EmptySection";
        case Errc::NotABeltFace: return "NotABeltFace";
        case Errc::SolverFailure: return "SolverFailure";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
        case Errc::InputError: return "InputError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& what)
        : Error(Errc::ParseError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// Carries the offending tile pairs so callers can print a listing.
class BuildOverlapError : public Error {
public:
    BuildOverlapError(std::string what, std::vector<std::pair<int, int>> pairs)
        : Error(Errc::BuildOverlap, what), pairs_(std::move(pairs)) {}

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
};

}  // namespace winglock
