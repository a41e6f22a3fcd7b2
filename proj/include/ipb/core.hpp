#ifndef IPB_CORE_HPP
#define IPB_CORE_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipb/errors.hpp"
#include "ipb/function_spec.hpp"

namespace ipb {

/// Two stored values within this distance are treated as the same image
/// point by hole_bracket.
inline constexpr double image_value_tol = 1e-12;

/// A finite possibility space: an ordered sequence of distinct atom labels.
/// Immutable; share via PartitionPtr.
class Partition {
public:
    explicit Partition(std::vector<std::string> atoms);

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::string& atom(std::size_t i) const { return atoms_.at(i); }
    std::span<const std::string> atoms() const noexcept { return atoms_; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.atoms_ == b.atoms_;
    }

private:
    std::vector<std::string> atoms_;
};

using PartitionPtr = std::shared_ptr<const Partition>;

PartitionPtr make_partition(std::vector<std::string> atoms);
/// Convenience: atoms named "w1".."wn".
PartitionPtr make_partition(std::size_t n);

bool same_partition(const PartitionPtr& a, const PartitionPtr& b);

/// A bounded real-valued map on a partition: values[i] = X(atom i).
/// All values finite; immutable.
class Gamble {
public:
    Gamble(PartitionPtr partition, std::vector<double> values);

    const PartitionPtr& partition() const noexcept { return partition_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_.at(i); }
    std::size_t size() const noexcept { return values_.size(); }

    double min_value() const;
    double max_value() const;

    /// Distinct values, ascending (exact comparison).
    std::vector<double> image_set() const;

    Gamble map(const std::function<double(double)>& f) const;

    friend Gamble operator+(const Gamble& a, const Gamble& b);
    friend Gamble operator-(const Gamble& a, const Gamble& b);
    friend Gamble operator*(const Gamble& a, const Gamble& b);
    friend Gamble operator-(const Gamble& a);
    friend Gamble operator+(const Gamble& a, double c);
    friend Gamble operator+(double c, const Gamble& a) { return a + c; }
    friend Gamble operator-(const Gamble& a, double c) { return a + (-c); }
    friend Gamble operator*(double c, const Gamble& a);
    friend Gamble operator*(const Gamble& a, double c) { return c * a; }

private:
    PartitionPtr partition_;
    std::vector<double> values_;
};

Gamble constant_gamble(PartitionPtr partition, double c);

struct Bounds {
    double inf;
    double sup;
};

/// Minimum and maximum of the gamble's values.
Bounds bounds_of(const Gamble& g);

/// A subset of atoms of a partition.
class Event {
public:
    Event(PartitionPtr partition, std::vector<std::size_t> members);

    const PartitionPtr& partition() const noexcept { return partition_; }
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::size_t i) const;

    /// 0/1 gamble of the event.
    Gamble indicator() const;

private:
    PartitionPtr partition_;
    std::vector<std::size_t> members_; // sorted, unique
};

Event full_event(PartitionPtr partition);
Event event_leq(const Gamble& g, double threshold);  // (g <= threshold)
Event event_geq(const Gamble& g, double threshold);  // (g >= threshold)
Event event_gt(const Gamble& g, double threshold);   // (g >  threshold)
Event event_abs_geq(const Gamble& g, double center, double b); // (|g - center| >= b)

/// The restriction of a gamble to a non-empty conditioning event.
/// Undefined outside the event; only the restricted image is exposed.
class ConditionalGamble {
public:
    ConditionalGamble(Gamble base, Event condition);

    const Gamble& base() const noexcept { return base_; }
    const Event& condition() const noexcept { return condition_; }
    /// Values on the conditioning atoms, in atom order (with repeats).
    std::vector<double> image() const;

private:
    Gamble base_;
    Event condition_;
};

ConditionalGamble restrict(const Gamble& g, const Event& b);

/// Nearest image-set values surrounding a point k in [inf, sup]:
/// lower = max{v in Im : v <= k}, upper = min{v in Im : v >= k}.
/// strict iff lower < upper, i.e. k falls in a hole of the image set.
struct HoleBracket {
    double lower;
    double upper;
    bool strict;
};

HoleBracket hole_bracket(const Gamble& g, double k);

struct AssessmentEntry {
    std::string name;
    Gamble gamble;
    double lower;
};

/// Encodes an assessed upper prevision upr(g) = u as the lower-prevision
/// entry (-g, -u). Involutive.
AssessmentEntry conjugate_entry(const std::string& name, const Gamble& g, double upper);

/// A finite set of named gambles with assessed lower previsions.
/// Uppers are always stored via conjugacy. Inconsistent values are
/// representable on purpose; the consistency checks diagnose them.
class Assessment {
public:
    explicit Assessment(PartitionPtr partition);

    const PartitionPtr& partition() const noexcept { return partition_; }
    const std::vector<AssessmentEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    void add_lower(const std::string& name, Gamble g, double lower);
    void add_upper(const std::string& name, const Gamble& g, double upper);
    void add(AssessmentEntry entry);

    const AssessmentEntry* find(const std::string& name) const;
    /// Throws unknown_identifier when absent.
    const AssessmentEntry& at(const std::string& name) const;

private:
    PartitionPtr partition_;
    std::vector<AssessmentEntry> entries_;
};

/// Pointwise image gamble f(g) on the same partition.
/// Throws domain_mismatch when some value of g lies outside f's interval.
Gamble apply_function(const Gamble& g, const FunctionSpec& f);

} // namespace ipb

#endif
