#ifndef IPB_DOCUMENT_HPP
#define IPB_DOCUMENT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ipb/core.hpp"

namespace ipb {

/// The on-disk assessment format:
///   {"atoms": [...], "gambles": {name: [...]}, "lower": {name: v},
///    "upper": {name: v}}
/// `upper` is optional; unknown fields are rejected. Key order is
/// preserved so that a parsed document serializes back identically.
struct AssessmentDocument {
    std::vector<std::string> atoms;
    std::vector<std::pair<std::string, std::vector<double>>> gambles;
    std::vector<std::pair<std::string, double>> lower;
    std::vector<std::pair<std::string, double>> upper;

    const std::vector<double>* find_gamble(const std::string& name) const;

    /// Build the in-memory assessment; assessed uppers become conjugate
    /// lower entries named "-<name>".
    Assessment to_assessment() const;
    PartitionPtr partition() const;

    bool operator==(const AssessmentDocument&) const = default;
};

AssessmentDocument parse_document(const std::string& text);
AssessmentDocument load_document(const std::string& path);
std::string serialize_document(const AssessmentDocument& doc);

} // namespace ipb

#endif
