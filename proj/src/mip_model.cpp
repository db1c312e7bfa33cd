#include "tatsp/mip_model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tatsp/errors.hpp"
#include "tatsp/evaluation.hpp"

namespace tatsp::mip {

std::string_view family_tag(Family f)
{
    switch (f)
    {
    case Family::FlowOut: return "4a";
    case Family::FlowIn: return "4b";
    case Family::Mtz: return "4c";
    case Family::StartNode: return "4d";
    case Family::ActivationTarget: return "4e";
    case Family::ActivationTrigger: return "4f";
    case Family::Precedence: return "4g";
    case Family::ForcedActivation: return "4h";
    case Family::PrecedenceDef: return "4i";
    case Family::LastTrigger: return "4j";
    }
    return "?";
}

std::string_view family_name(Family f)
{
    switch (f)
    {
    case Family::FlowOut: return "flow_out";
    case Family::FlowIn: return "flow_in";
    case Family::Mtz: return "mtz";
    case Family::StartNode: return "start";
    case Family::ActivationTarget: return "act_target";
    case Family::ActivationTrigger: return "act_trigger";
    case Family::Precedence: return "prec";
    case Family::ForcedActivation: return "force";
    case Family::PrecedenceDef: return "zdef";
    case Family::LastTrigger: return "last";
    }
    return "?";
}

std::size_t Model::z(ArcId p, ArcId q) const
{
    const auto pp = static_cast<std::size_t>(p);
    const auto qq = static_cast<std::size_t>(q);
    return arc_count + static_cast<std::size_t>(node_count) + relation_count + pp * (arc_count - 1) +
           (qq < pp ? qq : qq - 1);
}

std::size_t Model::count(VarKind k) const
{
    return static_cast<std::size_t>(
        std::count_if(variables.begin(), variables.end(), [k](const Variable& v) { return v.kind == k; }));
}

std::size_t Model::count(Family f) const
{
    return static_cast<std::size_t>(
        std::count_if(constraints.begin(), constraints.end(), [f](const Constraint& c) { return c.family == f; }));
}

std::size_t expected_constraint_count(const Instance& inst)
{
    const auto n = static_cast<std::size_t>(inst.node_count());
    const std::size_t arcs = inst.arc_count();
    const std::size_t rels = inst.relation_count();
    std::size_t into_depot = 0, targets = 0, pairs = 0;
    for (std::size_t a = 0; a < arcs; ++a)
    {
        if (inst.arcs()[a].head == depot)
            ++into_depot;
        const std::size_t k = inst.relations_by_target(static_cast<ArcId>(a)).size();
        if (k > 0)
            ++targets;
        pairs += k * (k > 0 ? k - 1 : 0);
    }
    return 2 * n + (arcs - into_depot) + 1 + targets + 3 * rels + arcs * (arcs > 0 ? arcs - 1 : 0) + pairs;
}

namespace {

class RowBuilder
{
public:
    RowBuilder& add(std::size_t var, double coef)
    {
        terms_.push_back({var, coef});
        return *this;
    }

    std::vector<Term> take()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
        std::vector<Term> out;
        for (const Term& t : terms_)
        {
            if (!out.empty() && out.back().var == t.var)
                out.back().coef += t.coef;
            else
                out.push_back(t);
        }
        std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
        terms_.clear();
        return out;
    }

private:
    std::vector<Term> terms_;
};

std::string arc_label(ArcId a) { return "a" + std::to_string(a); }
std::string rel_label(RelationId r) { return "r" + std::to_string(r); }

} // namespace

Model build_model(const Instance& inst, ModelLimits limits)
{
    const std::size_t rows = expected_constraint_count(inst);
    if (rows > limits.max_constraints)
        throw CapabilityError("model would have " + std::to_string(rows) + " constraints (" +
                              std::to_string(inst.arc_count()) + " arcs, " + std::to_string(inst.relation_count()) +
                              " relations), cap is " + std::to_string(limits.max_constraints));

    Model m;
    m.name = inst.name();
    m.node_count = inst.node_count();
    m.arc_count = inst.arc_count();
    m.relation_count = inst.relation_count();
    const double N = inst.node_count();
    const auto arc_count = static_cast<ArcId>(inst.arc_count());

    m.variables.reserve(m.arc_count + static_cast<std::size_t>(m.node_count) + m.relation_count +
                        m.arc_count * (m.arc_count ? m.arc_count - 1 : 0));
    for (ArcId a = 0; a < arc_count; ++a)
    {
        const Arc& arc = inst.arc(a);
        m.variables.push_back({VarKind::Arc, a, -1,
                               "x_" + std::to_string(arc.tail) + "_" + std::to_string(arc.head), 0.0, 1.0, true});
    }
    for (NodeId i = 0; i < inst.node_count(); ++i)
        m.variables.push_back({VarKind::Position, i, -1, "u_" + std::to_string(i), 0.0, N - 1.0, true});
    for (RelationId r = 0; r < static_cast<RelationId>(inst.relation_count()); ++r)
        m.variables.push_back({VarKind::Relation, r, -1, "y_" + rel_label(r), 0.0, 1.0, true});
    for (ArcId p = 0; p < arc_count; ++p)
        for (ArcId q = 0; q < arc_count; ++q)
            if (p != q)
                m.variables.push_back(
                    {VarKind::Precedence, p, q, "z_" + arc_label(p) + "_" + arc_label(q), 0.0, 1.0, true});

    RowBuilder row;
    for (ArcId a = 0; a < arc_count; ++a)
        row.add(m.x(a), inst.arc(a).cost);
    for (RelationId r = 0; r < static_cast<RelationId>(inst.relation_count()); ++r)
        row.add(m.y(r), delta_cost(inst, r));
    m.objective = row.take();

    m.constraints.reserve(rows);
    const auto emit = [&](Family f, std::string name, Sense sense, double rhs) {
        m.constraints.push_back({f, std::move(name), row.take(), sense, rhs});
    };
    const auto tail_u = [&](ArcId a) { return m.u(inst.arc(a).tail); };

    // 4a, 4b
    for (NodeId i = 0; i < inst.node_count(); ++i)
    {
        for (ArcId a : inst.out_arcs(i))
            row.add(m.x(a), 1.0);
        emit(Family::FlowOut, std::string(family_name(Family::FlowOut)) + "_" + std::to_string(i), Sense::Equal, 1.0);
    }
    for (NodeId i = 0; i < inst.node_count(); ++i)
    {
        for (ArcId a = 0; a < arc_count; ++a)
            if (inst.arc(a).head == i)
                row.add(m.x(a), 1.0);
        emit(Family::FlowIn, std::string(family_name(Family::FlowIn)) + "_" + std::to_string(i), Sense::Equal, 1.0);
    }
    // 4c
    for (ArcId a = 0; a < arc_count; ++a)
    {
        const Arc& arc = inst.arc(a);
        if (arc.head == depot)
            continue;
        row.add(m.u(arc.tail), 1.0).add(m.u(arc.head), -1.0).add(m.x(a), N);
        emit(Family::Mtz, "mtz_" + std::to_string(arc.tail) + "_" + std::to_string(arc.head), Sense::LessEqual,
             N - 1.0);
    }
    // 4d
    row.add(m.u(depot), 1.0);
    emit(Family::StartNode, "start_0", Sense::Equal, 0.0);
    // 4e
    for (ArcId a = 0; a < arc_count; ++a)
    {
        const auto rels = inst.relations_by_target(a);
        if (rels.empty())
            continue;
        for (RelationId r : rels)
            row.add(m.y(r), 1.0);
        row.add(m.x(a), -1.0);
        emit(Family::ActivationTarget, "act_target_" + arc_label(a), Sense::LessEqual, 0.0);
    }
    // 4f, 4g, 4h
    for (RelationId r = 0; r < static_cast<RelationId>(inst.relation_count()); ++r)
    {
        const Relation& rel = inst.relation(r);
        row.add(m.y(r), 1.0).add(m.x(rel.trigger), -1.0);
        emit(Family::ActivationTrigger, "act_trigger_" + rel_label(r), Sense::LessEqual, 0.0);
    }
    for (RelationId r = 0; r < static_cast<RelationId>(inst.relation_count()); ++r)
    {
        const Relation& rel = inst.relation(r);
        row.add(tail_u(rel.trigger), 1.0).add(tail_u(rel.target), -1.0).add(m.y(r), N);
        emit(Family::Precedence, "prec_" + rel_label(r), Sense::LessEqual, N - 1.0);
    }
    for (RelationId r = 0; r < static_cast<RelationId>(inst.relation_count()); ++r)
    {
        const Relation& rel = inst.relation(r);
        row.add(m.z(rel.target, rel.trigger), -1.0);
        for (RelationId c : inst.relations_by_target(rel.target))
            row.add(m.y(c), -1.0);
        row.add(m.x(rel.target), 1.0).add(m.x(rel.trigger), 1.0);
        emit(Family::ForcedActivation, "force_" + rel_label(r), Sense::LessEqual, 1.0);
    }
    // 4i
    for (ArcId p = 0; p < arc_count; ++p)
        for (ArcId q = 0; q < arc_count; ++q)
        {
            if (p == q)
                continue;
            row.add(tail_u(p), 1.0).add(tail_u(q), -1.0).add(m.z(p, q), N - 1.0);
            emit(Family::PrecedenceDef, "zdef_" + arc_label(p) + "_" + arc_label(q), Sense::LessEqual, N - 1.0);
        }
    // 4j: relation rb = (b, a) against every other rc = (c, a)
    for (ArcId a = 0; a < arc_count; ++a)
    {
        const auto rels = inst.relations_by_target(a);
        for (RelationId rb : rels)
            for (RelationId rc : rels)
            {
                if (rb == rc)
                    continue;
                const ArcId b = inst.relation(rb).trigger;
                const ArcId c = inst.relation(rc).trigger;
                row.add(m.y(rb), 1.0).add(m.y(rc), -1.0).add(m.z(c, b), -1.0).add(m.z(a, c), -1.0);
                row.add(m.x(c), 1.0).add(m.x(b), 1.0).add(m.x(a), 1.0);
                emit(Family::LastTrigger, "last_" + rel_label(rb) + "_" + rel_label(rc), Sense::LessEqual, 3.0);
            }
    }
    return m;
}

namespace {

void write_terms(std::ostream& out, const Model& m, const std::vector<Term>& terms)
{
    if (terms.empty())
    {
        out << " 0 " << m.variables.front().name;
        return;
    }
    std::size_t on_line = 0;
    for (std::size_t k = 0; k < terms.size(); ++k)
    {
        const Term& t = terms[k];
        if (on_line == 8)
        {
            out << "\n  ";
            on_line = 0;
        }
        const double mag = std::abs(t.coef);
        out << ' ' << (t.coef < 0 ? '-' : '+') << ' ';
        if (mag != 1.0)
            out << format_number(mag) << ' ';
        out << m.variables[t.var].name;
        ++on_line;
    }
}

} // namespace

void write_lp(const Model& m, std::ostream& out)
{
    out << "\\ TA-TSP position model";
    if (!m.name.empty())
        out << " for " << m.name;
    out << "\nMinimize\n obj:";
    write_terms(out, m, m.objective);
    out << "\nSubject To\n";
    for (const Constraint& c : m.constraints)
    {
        out << ' ' << c.name << ':';
        write_terms(out, m, c.terms);
        out << (c.sense == Sense::Equal ? " = " : " <= ") << format_number(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const Variable& v : m.variables)
        if (v.kind == VarKind::Position)
            out << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << '\n';
    out << "Binaries\n";
    for (const Variable& v : m.variables)
        if (v.kind != VarKind::Position)
            out << ' ' << v.name << '\n';
    out << "Generals\n";
    for (const Variable& v : m.variables)
        if (v.kind == VarKind::Position)
            out << ' ' << v.name << '\n';
    out << "End\n";
}

Assignment tour_assignment(const Instance& inst, const Tour& tour)
{
    const TourEvaluation ev = evaluate_tour(inst, tour);
    const std::size_t arcs = inst.arc_count();
    const auto n = static_cast<std::size_t>(inst.node_count());

    Assignment a;
    a.x.assign(arcs, 0.0);
    a.u.assign(n, 0.0);
    a.y.assign(inst.relation_count(), 0.0);
    a.z.assign(arcs * arcs, 0.0);
    for (std::size_t p = 0; p < tour.size(); ++p)
    {
        a.u[static_cast<std::size_t>(tour.nodes[p])] = static_cast<double>(p);
        a.x[static_cast<std::size_t>(*inst.find_arc(tour.nodes[p], tour.successor(p)))] = 1.0;
        if (ev.active_relations[p])
            a.y[static_cast<std::size_t>(*ev.active_relations[p])] = 1.0;
    }
    for (std::size_t p = 0; p < arcs; ++p)
        for (std::size_t q = 0; q < arcs; ++q)
            if (p != q)
                a.z[p * arcs + q] =
                    a.u[static_cast<std::size_t>(inst.arcs()[p].tail)] <= a.u[static_cast<std::size_t>(inst.arcs()[q].tail)]
                        ? 1.0
                        : 0.0;
    return a;
}

bool CheckReport::violates(Family f) const
{
    return std::any_of(violated.begin(), violated.end(), [f](const Violation& v) { return v.family == f; });
}

CheckReport check_assignment(const Model& m, const Assignment& a)
{
    constexpr double tol = 1e-6;
    if (a.x.size() != m.arc_count || a.u.size() != static_cast<std::size_t>(m.node_count) ||
        a.y.size() != m.relation_count || a.z.size() != m.arc_count * m.arc_count)
        throw std::invalid_argument("assignment does not cover every model variable");

    std::vector<double> value(m.variables.size());
    for (std::size_t k = 0; k < m.variables.size(); ++k)
    {
        const Variable& v = m.variables[k];
        const auto first = static_cast<std::size_t>(v.first);
        switch (v.kind)
        {
        case VarKind::Arc: value[k] = a.x[first]; break;
        case VarKind::Position: value[k] = a.u[first]; break;
        case VarKind::Relation: value[k] = a.y[first]; break;
        case VarKind::Precedence: value[k] = a.z[first * m.arc_count + static_cast<std::size_t>(v.second)]; break;
        }
    }

    CheckReport report;
    for (std::size_t k = 0; k < m.variables.size(); ++k)
    {
        const Variable& v = m.variables[k];
        const double val = value[k];
        const bool out_of_range = val < v.lower - tol || val > v.upper + tol;
        const bool fractional = v.integer && std::abs(val - std::round(val)) > tol;
        if (out_of_range || fractional)
            report.bound_violations.push_back(v.name);
    }

    for (const Constraint& c : m.constraints)
    {
        double lhs = 0.0;
        for (const Term& t : c.terms)
            lhs += t.coef * value[t.var];
        const bool ok = c.sense == Sense::Equal ? std::abs(lhs - c.rhs) <= tol : lhs <= c.rhs + tol;
        if (!ok)
            report.violated.push_back({c.family, c.name, lhs, c.rhs});
    }

    for (const Term& t : m.objective)
        report.objective += t.coef * value[t.var];
    report.feasible = report.violated.empty() && report.bound_violations.empty();
    return report;
}

} // namespace tatsp::mip
