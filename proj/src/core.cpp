#include "ipb/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ipb {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            raise(Errc::out_of_range, std::string(what) + " contains a non-finite value");
        }
    }
}

} // namespace

Partition::Partition(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        raise(Errc::out_of_range, "a partition needs at least one atom");
    }
    std::set<std::string> seen;
    for (const auto& a : atoms_) {
        if (a.empty()) {
            raise(Errc::out_of_range, "atom labels must be non-empty");
        }
        if (!seen.insert(a).second) {
            raise(Errc::out_of_range, "duplicate atom label '" + a + "'");
        }
    }
}

std::optional<std::size_t> Partition::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i] == label) return i;
    }
    return std::nullopt;
}

PartitionPtr make_partition(std::vector<std::string> atoms) {
    return std::make_shared<const Partition>(std::move(atoms));
}

PartitionPtr make_partition(std::size_t n) {
    std::vector<std::string> atoms;
    atoms.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        atoms.push_back("w" + std::to_string(i));
    }
    return make_partition(std::move(atoms));
}

bool same_partition(const PartitionPtr& a, const PartitionPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Gamble::Gamble(PartitionPtr partition, std::vector<double> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
    if (!partition_) {
        raise(Errc::out_of_range, "gamble needs a partition");
    }
    if (values_.size() != partition_->size()) {
        raise(Errc::dimension_error, "gamble has " + std::to_string(values_.size()) +
                                         " values on a partition of size " +
                                         std::to_string(partition_->size()));
    }
    require_finite(values_, "gamble");
}

double Gamble::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double Gamble::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

std::vector<double> Gamble::image_set() const {
    std::vector<double> im(values_);
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
}

Gamble Gamble::map(const std::function<double(double)>& f) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
    return Gamble(partition_, std::move(out));
}

namespace {
void require_same(const Gamble& a, const Gamble& b) {
    if (!same_partition(a.partition(), b.partition())) {
        raise(Errc::domain_mismatch, "gambles live on different partitions");
    }
}
} // namespace

Gamble operator+(const Gamble& a, const Gamble& b) {
    require_same(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values_[i] + b.values_[i];
    return Gamble(a.partition_, std::move(out));
}

Gamble operator-(const Gamble& a, const Gamble& b) {
    require_same(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values_[i] - b.values_[i];
    return Gamble(a.partition_, std::move(out));
}

Gamble operator*(const Gamble& a, const Gamble& b) {
    require_same(a, b);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values_[i] * b.values_[i];
    return Gamble(a.partition_, std::move(out));
}

Gamble operator-(const Gamble& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.values_[i];
    return Gamble(a.partition_, std::move(out));
}

Gamble operator+(const Gamble& a, double c) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values_[i] + c;
    return Gamble(a.partition_, std::move(out));
}

Gamble operator*(double c, const Gamble& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a.values_[i];
    return Gamble(a.partition_, std::move(out));
}

Gamble constant_gamble(PartitionPtr partition, double c) {
    std::vector<double> values(partition->size(), c);
    return Gamble(std::move(partition), std::move(values));
}

Bounds bounds_of(const Gamble& g) {
    return Bounds{g.min_value(), g.max_value()};
}

Event::Event(PartitionPtr partition, std::vector<std::size_t> members)
    : partition_(std::move(partition)), members_(std::move(members)) {
    if (!partition_) {
        raise(Errc::out_of_range, "event needs a partition");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= partition_->size()) {
        raise(Errc::out_of_range, "event member index out of range");
    }
}

bool Event::contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

Gamble Event::indicator() const {
    std::vector<double> values(partition_->size(), 0.0);
    for (std::size_t i : members_) values[i] = 1.0;
    return Gamble(partition_, std::move(values));
}

Event full_event(PartitionPtr partition) {
    std::vector<std::size_t> all(partition->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Event(std::move(partition), std::move(all));
}

namespace {
template <typename Pred>
Event event_where(const Gamble& g, Pred pred) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (pred(g[i])) members.push_back(i);
    }
    return Event(g.partition(), std::move(members));
}
} // namespace

Event event_leq(const Gamble& g, double threshold) {
    return event_where(g, [&](double v) { return v <= threshold; });
}

Event event_geq(const Gamble& g, double threshold) {
    return event_where(g, [&](double v) { return v >= threshold; });
}

Event event_gt(const Gamble& g, double threshold) {
    return event_where(g, [&](double v) { return v > threshold; });
}

Event event_abs_geq(const Gamble& g, double center, double b) {
    return event_where(g, [&](double v) { return std::abs(v - center) >= b; });
}

ConditionalGamble::ConditionalGamble(Gamble base, Event condition)
    : base_(std::move(base)), condition_(std::move(condition)) {
    if (!same_partition(base_.partition(), condition_.partition())) {
        raise(Errc::domain_mismatch, "conditioning event lives on a different partition");
    }
    if (condition_.empty()) {
        raise(Errc::empty_conditioning_event, "cannot condition on the impossible event");
    }
}

std::vector<double> ConditionalGamble::image() const {
    std::vector<double> out;
    out.reserve(condition_.members().size());
    for (std::size_t i : condition_.members()) out.push_back(base_[i]);
    return out;
}

ConditionalGamble restrict(const Gamble& g, const Event& b) {
    return ConditionalGamble(g, b);
}

HoleBracket hole_bracket(const Gamble& g, double k) {
    const double lo = g.min_value();
    const double hi = g.max_value();
    if (k < lo - image_value_tol || k > hi + image_value_tol) {
        std::ostringstream msg;
        msg << "k = " << k << " outside [" << lo << ", " << hi << "]";
        raise(Errc::out_of_range, msg.str());
    }
    // Membership within tolerance collapses the bracket at k itself.
    for (double v : g.values()) {
        if (std::abs(v - k) <= image_value_tol) {
            return HoleBracket{k, k, false};
        }
    }
    double lower = lo;
    double upper = hi;
    for (double v : g.values()) {
        if (v <= k && v > lower) lower = v;
        if (v >= k && v < upper) upper = v;
    }
    return HoleBracket{lower, upper, lower < upper};
}

AssessmentEntry conjugate_entry(const std::string& name, const Gamble& g, double upper) {
    if (!std::isfinite(upper)) {
        raise(Errc::out_of_range, "assessed value must be finite");
    }
    return AssessmentEntry{name, -g, -upper};
}

Assessment::Assessment(PartitionPtr partition) : partition_(std::move(partition)) {
    if (!partition_) {
        raise(Errc::out_of_range, "assessment needs a partition");
    }
}

void Assessment::add(AssessmentEntry entry) {
    if (!same_partition(entry.gamble.partition(), partition_)) {
        raise(Errc::domain_mismatch, "entry gamble lives on a different partition");
    }
    if (!std::isfinite(entry.lower)) {
        raise(Errc::out_of_range, "assessed value must be finite");
    }
    if (find(entry.name) != nullptr) {
        raise(Errc::out_of_range, "duplicate entry name '" + entry.name + "'");
    }
    entries_.push_back(std::move(entry));
}

void Assessment::add_lower(const std::string& name, Gamble g, double lower) {
    add(AssessmentEntry{name, std::move(g), lower});
}

void Assessment::add_upper(const std::string& name, const Gamble& g, double upper) {
    add(conjugate_entry("-" + name, g, upper));
}

const AssessmentEntry* Assessment::find(const std::string& name) const {
    for (const auto& e : entries_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

const AssessmentEntry& Assessment::at(const std::string& name) const {
    const AssessmentEntry* e = find(name);
    if (e == nullptr) {
        raise(Errc::unknown_identifier, "no entry named '" + name + "'");
    }
    return *e;
}

Gamble apply_function(const Gamble& g, const FunctionSpec& f) {
    for (double v : g.values()) {
        if (!f.contains(v)) {
            std::ostringstream msg;
            msg << "value " << v << " outside the domain [" << f.lo << ", " << f.hi << "] of "
                << f.name;
            raise(Errc::domain_mismatch, msg.str());
        }
    }
    return g.map(f.eval);
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::empty_conditioning_event: return "EmptyConditioningEvent";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::domain_mismatch: return "DomainMismatch";
        case Errc::malformed_program: return "MalformedProgram";
        case Errc::unbounded_region: return "UnboundedRegion";
        case Errc::vertex_budget_exceeded: return "VertexBudgetExceeded";
        case Errc::empty_credal_set: return "EmptyCredalSet";
        case Errc::boundary_point: return "BoundaryPoint";
        case Errc::conjugacy_violation: return "ConjugacyViolation";
        case Errc::bad_exponents: return "BadExponents";
        case Errc::negative_moment: return "NegativeMoment";
        case Errc::non_positive_threshold: return "NonPositiveThreshold";
        case Errc::non_positive_epsilon: return "NonPositiveEpsilon";
        case Errc::negativity_flag_missing: return "NegativityFlagMissing";
        case Errc::empty_constrained_credal_set: return "EmptyConstrainedCredalSet";
        case Errc::zero_lower_prevision: return "ZeroLowerPrevision";
        case Errc::parse_error: return "ParseError";
        case Errc::schema_error: return "SchemaError";
        case Errc::dimension_error: return "DimensionError";
        case Errc::unknown_identifier: return "UnknownIdentifier";
        case Errc::evaluation_error: return "EvaluationError";
        case Errc::precondition_failed: return "PreconditionFailed";
    }
    return "UnknownError";
}

} // namespace ipb
