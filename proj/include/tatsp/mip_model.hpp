#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tatsp/instance.hpp"

namespace tatsp::mip {

// Constraint families of the position-based (MTZ) TA-TSP model.
enum class Family
{
    FlowOut,          // 4a  sum_j x_ij = 1
    FlowIn,           // 4b  sum_j x_ji = 1
    Mtz,              // 4c  u_i - u_j + N x_ij <= N-1, j != 0
    StartNode,        // 4d  u_0 = 0
    ActivationTarget, // 4e  sum_{(b,a) in R_a} y_ba <= x_a
    ActivationTrigger,// 4f  y_ba <= x_b
    Precedence,       // 4g  u_b + 1 <= u_a + N (1 - y_ba)
    ForcedActivation, // 4h  1 - z_ab <= sum_c y_ca + (1 - x_a) + (1 - x_b)
    PrecedenceDef,    // 4i  u_ai <= u_aj + (N-1)(1 - z_ai_aj)
    LastTrigger       // 4j  y_ba <= y_ca + z_cb + z_ac + (1-x_c) + (1-x_b) + (1-x_a)
};

std::string_view family_tag(Family f);  // "4a" .. "4j"
std::string_view family_name(Family f); // row-name prefix, e.g. "mtz"

enum class VarKind
{
    Arc,        // x_i_j
    Position,   // u_i
    Relation,   // y_r<k>
    Precedence  // z_a<p>_a<q>
};

struct Variable
{
    VarKind kind;
    std::int32_t first;  // arc, node, relation, or first arc of z
    std::int32_t second; // second arc of z, otherwise unused
    std::string name;
    double lower;
    double upper;
    bool integer;
};

struct Term
{
    std::size_t var;
    double coef;
};

enum class Sense
{
    LessEqual,
    Equal
};

struct Constraint
{
    Family family;
    std::string name;
    std::vector<Term> terms; // merged: one term per variable, no zero coefficients
    Sense sense;
    double rhs;
};

struct Model
{
    std::string name;
    std::int32_t node_count = 0;
    std::size_t arc_count = 0;
    std::size_t relation_count = 0;
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<Term> objective;

    std::size_t x(ArcId a) const { return static_cast<std::size_t>(a); }
    std::size_t u(NodeId i) const { return arc_count + static_cast<std::size_t>(i); }
    std::size_t y(RelationId r) const { return arc_count + static_cast<std::size_t>(node_count) + static_cast<std::size_t>(r); }
    std::size_t z(ArcId p, ArcId q) const; // p != q

    std::size_t count(VarKind k) const;
    std::size_t count(Family f) const;
};

struct ModelLimits
{
    std::size_t max_constraints = 1'000'000;
};

// Row count build_model would produce, computed without building.
std::size_t expected_constraint_count(const Instance& inst);

/// Variables x (per arc), u (per node, [0, N-1]), y (per relation), z (per
/// ordered pair of distinct arcs); objective sum c_ij x_ij + sum Δ(r) y_r;
/// rows for families 4a-4j. Throws CapabilityError when the row count would
/// exceed `limits.max_constraints`.
Model build_model(const Instance& inst, ModelLimits limits = {});

/// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / Generals / End.
/// Row names are `<family>_<ids>`; output is byte-deterministic.
void write_lp(const Model& m, std::ostream& out);

// Values for every model variable, grouped by kind. z is |A| x |A| row-major;
// its diagonal is unused.
struct Assignment
{
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> y;
    std::vector<double> z;
};

/// Assignment induced by a feasible tour: x from the tour arcs, u from node
/// positions (u_0 = 0), y from the active relations, and z_pq = 1 iff the
/// tail of p is placed no later than the tail of q.
Assignment tour_assignment(const Instance& inst, const Tour& tour);

struct Violation
{
    Family family;
    std::string row;
    double lhs;
    double rhs;
};

struct CheckReport
{
    bool feasible = true;
    std::vector<Violation> violated;
    std::vector<std::string> bound_violations;
    double objective = 0.0;

    bool violates(Family f) const;
};

// Evaluates every row and bound at tolerance 1e-6. Throws std::invalid_argument
// if the assignment does not cover the model's variables.
CheckReport check_assignment(const Model& m, const Assignment& a);

} // namespace tatsp::mip
