#ifndef IPB_EXPRESSION_HPP
#define IPB_EXPRESSION_HPP

#include <memory>
#include <string>

#include "ipb/core.hpp"
#include "ipb/document.hpp"

namespace ipb {

/// Gamble expressions: identifiers, numeric literals, + - * / ^, abs(e),
/// ind(e <= e), ind(e >= e), parentheses. Binary operators are
/// left-associative with precedence ^ over unary minus over * / over + -.
/// `^` with a non-integer exponent requires a nonnegative base.
class GambleExpression {
public:
    struct Node;
    explicit GambleExpression(std::shared_ptr<const Node> root, std::string text);

    /// Evaluate on the document's partition.
    Gamble evaluate(const AssessmentDocument& doc) const;

    const std::string& text() const noexcept { return text_; }

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Parse with all identifiers resolved against the document's gambles.
GambleExpression parse_expression(const std::string& text, const AssessmentDocument& doc);

/// Parse + evaluate in one step.
Gamble evaluate_expression(const std::string& text, const AssessmentDocument& doc);

} // namespace ipb

#endif
