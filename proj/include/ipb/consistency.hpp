#ifndef IPB_CONSISTENCY_HPP
#define IPB_CONSISTENCY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipb/core.hpp"
#include "ipb/lp.hpp"

namespace ipb {

enum class ConsistencyLevel { AvoidingSureLoss, TwoCoherence, Coherence, DFCoherence };

const char* consistency_level_name(ConsistencyLevel level);

/// The probability vectors dominating an assessment, optionally intersected
/// with expectation pins E_p(gamble) = value. Represents
/// { p in simplex : E_p(X_j) >= lower_j for all entries j, mean constraints }.
struct CredalPolytope {
    Assessment assessment;
    std::vector<std::pair<Gamble, double>> mean_constraints;
};

/// The LP feasible region of a credal polytope (simplex constraint set).
LinearProgram credal_program(const CredalPolytope& poly, std::vector<double> objective);

bool credal_nonempty(const CredalPolytope& poly);

/// Vertices of the credal polytope (empty iff the polytope is empty).
std::vector<std::vector<double>> credal_vertices(const CredalPolytope& poly);

struct PairWitness {
    std::string x0;
    std::string x1;
    double s0 = 0.0;
    double s1 = 0.0;
    double t = 0.0;
};

struct ConsistencyReport {
    ConsistencyLevel level = ConsistencyLevel::AvoidingSureLoss;
    bool pass = false;
    /// ASL: one dominating probability vector when pass.
    std::vector<double> witness_probability;
    /// Coherence: per-entry envelope gap lower_j - min over the credal set
    /// of E_p(X_j); all are <= 0, pass iff all are 0 within tolerance.
    std::vector<std::pair<std::string, double>> envelope_gaps;
    /// 2-coherence: first failing pair with its normalized multipliers.
    std::optional<PairWitness> failing_pair;
    std::string note;
};

/// Pass iff some probability vector dominates every assessed lower value.
ConsistencyReport check_asl(const Assessment& a);

/// Envelope tightness on every entry: pass iff for each j the credal
/// minimum of E_p(X_j) equals the assessed lower within 1e-8.
ConsistencyReport check_coherence(const Assessment& a);

/// For every ordered entry pair (X0, X1), no multipliers s1 >= 0, s0 real
/// make sup[ s1 (X1 - lpr(X1)) - s0 (X0 - lpr(X0)) ] negative. Decided by
/// one LP per pair over normalized multipliers; pass iff every optimum
/// t* >= -1e-9.
ConsistencyReport check_2coherence(const Assessment& a);

enum class Sense { Min, Max };

/// Optimum of E_p(y) over the polytope. Min with no mean constraints is the
/// natural-extension (lower envelope) value at y; Max the conjugate upper.
double credal_optimize(const CredalPolytope& poly, const Gamble& y, Sense sense);

/// Least-committal coherent extension of the assessment at y.
double natural_extension(const Assessment& a, const Gamble& y);

/// Upper envelope at y, i.e. -natural_extension(a, -y).
double upper_extension(const Assessment& a, const Gamble& y);

/// Sum of coherent upper previsions: an upper prevision bound for the sum
/// gamble. Valid under coherence only; the required level is carried along
/// so callers cannot silently rely on it in a 2-coherence setting.
struct SublinearUpperSum {
    double value = 0.0;
    ConsistencyLevel consistency_required = ConsistencyLevel::Coherence;
};

SublinearUpperSum sublinear_upper_sum(const std::vector<double>& upper_values);

} // namespace ipb

#endif
