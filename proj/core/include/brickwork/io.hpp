#pragma once

#include "brickwork/pipeline.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace brickwork {

// malformed document text or schema (exit code 4 at the CLI)
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& msg)
        : std::runtime_error(where + ": " + msg), where_(where) {}
    // "line L, column C" for syntax errors, a JSON pointer for schema errors
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

inline constexpr const char* kFormatVersion = "1";

// kind field of a document, without further validation
std::string document_kind(const std::string& text);

std::string serialize(const GroupType& G);
GroupType parse_group(const std::string& text);

std::string serialize(const Fan& fan);
Fan parse_fan(const std::string& text);

// a brick of a chart carries the subdivision it lives on
struct ChartRef {
    GroupType parent;
    LatticePoint center;
    int axis = 0;  // 0-based
};

struct BrickDocument {
    GBrick brick;
    std::optional<ChartRef> chart;
};
std::string serialize(const GBrick& B, const std::optional<ChartRef>& chart = std::nullopt);
BrickDocument parse_brick(const std::string& text);

std::string serialize(const Brickset& B);
Brickset parse_brickset(const std::string& text);

std::string serialize(const Theta& t);
Theta parse_theta(const std::string& text);

std::string serialize(const StabilityCertificate& c);
StabilityCertificate parse_certificate(const std::string& text);

// report documents, emitted only
std::string group_info_report(const GroupType& G);
std::string subdivision_report(const GroupType& G, const LatticePoint& v);
std::string model_report(const GroupType& G, const Fan& fan, const ModelReport& rep);
std::string brickset_report(const BricksetReport& rep);
std::string solve_report(const SolveResult& res);
std::string margin_report(const StabilityMargin& mg, const GBrick& B);
std::string hilb_report(const Brickset& B);
std::string failure_report(const EndToEndResult& res);
std::string error_document(const std::string& category, const std::string& code, const std::string& message);

// the report kind accepts any body; used for round-trip tests
std::string canonicalize_report(const std::string& text);

}  // namespace brickwork
