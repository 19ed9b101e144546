#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hdcc {

/// 1-based line/column position in a description file. Columns count bytes.
struct SourceLoc {
    int line = 1;
    int col = 1;

    friend bool operator==(const SourceLoc &, const SourceLoc &) = default;
};

enum class DiagnosticKind { Lex, Parse, Semantic, Type };

inline std::string_view to_string(DiagnosticKind kind)
{
    switch (kind) {
    case DiagnosticKind::Lex: return "lex error";
    case DiagnosticKind::Parse: return "parse error";
    case DiagnosticKind::Semantic: return "semantic error";
    case DiagnosticKind::Type: return "type error";
    }
    return "error";
}

/// A located message. `loc` is empty when no single lexeme is at fault
/// (for example a required directive that never appears).
struct Diagnostic {
    DiagnosticKind kind = DiagnosticKind::Semantic;
    std::optional<SourceLoc> loc;
    std::string message;
};

/// Renders as `file:line:col: <kind>: message`, or `file: <kind>: message`
/// without a location.
inline std::string render(const Diagnostic &d, std::string_view file)
{
    std::string out(file);
    if (d.loc) {
        out += ':' + std::to_string(d.loc->line) + ':' + std::to_string(d.loc->col);
    }
    out += ": ";
    out += to_string(d.kind);
    out += ": ";
    out += d.message;
    return out;
}

/// Either a value or at least one diagnostic, never both.
template <class T>
class Outcome {
public:
    Outcome(T value) : value_(std::move(value)) {}
    Outcome(std::vector<Diagnostic> diagnostics) : diagnostics_(std::move(diagnostics)) {}

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    T &value() { return *value_; }
    const T &value() const { return *value_; }
    T &operator*() { return *value_; }
    const T &operator*() const { return *value_; }
    T *operator->() { return &*value_; }
    const T *operator->() const { return &*value_; }

    const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
    std::optional<T> value_;
    std::vector<Diagnostic> diagnostics_;
};

} // namespace hdcc
