#include "extform/lp_model.hpp"

#include "extform/csp.hpp"

#include <algorithm>
#include <sstream>

namespace extform {

bool LpModel::satisfied_by(const std::vector<Rat>& values) const {
    if (values.size() != vars.size()) return false;
    for (const auto& v : values)
        if (v < 0 || v > 1) return false;
    for (const auto& row : rows) {
        Rat lhs = 0;
        for (const auto& [j, c] : row.terms) lhs += c * values[j];
        if (lhs != row.rhs) return false;
    }
    return true;
}

namespace {

// Exact decimal expansion exists iff the denominator is of the form 2^a 5^b.
bool decimal_exact(const Rat& r, std::string& out) {
    Int den = denominator(r);
    int a = 0, b = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++a;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++b;
    }
    if (den != 1) return false;
    int k = std::max(a, b);
    Int scale = 1;
    for (int i = 0; i < k; ++i) scale *= 10;
    Int num = numerator(r) * (scale / denominator(r));
    bool neg = num < 0;
    if (neg) num = -num;
    std::string digits = num.str();
    if (k == 0) {
        out = (neg ? "-" : "") + digits;
        return true;
    }
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    digits.insert(digits.end() - k, '.');
    out = (neg ? "-" : "") + digits;
    return true;
}

// Emits "c1 x1 + c2 x2 ..."; scales the whole expression to integers when some
// coefficient has no exact decimal form. Returns the applied scale.
Int write_expr(std::ostringstream& os, const LpModel& m,
               const std::vector<std::pair<int, Rat>>& terms) {
    bool all_decimal = true;
    for (const auto& [j, c] : terms) {
        std::string s;
        if (!decimal_exact(c, s)) {
            all_decimal = false;
            break;
        }
    }
    Int scale = 1;
    if (!all_decimal) {
        for (const auto& [j, c] : terms) scale = lcm(scale, denominator(c));
    }
    bool first = true;
    for (const auto& [j, c] : terms) {
        Rat v = c * scale;
        if (v == 0) continue;
        if (first) {
            if (v < 0) os << "- ";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        Rat av = abs(v);
        std::string s;
        decimal_exact(av, s);
        if (av != 1) os << s << " ";
        os << m.vars[j].name;
        first = false;
    }
    if (first) os << "0 " << (m.vars.empty() ? "x" : m.vars[0].name);
    return scale;
}

}  // namespace

std::string export_lp(const LpModel& m) {
    std::ostringstream os;
    os << "\\ exact rational model; rows marked 'scaled' are multiplied by the\n"
          "\\ stated integer so that all printed coefficients are exact\n";
    os << (m.sense == LpSense::Maximize ? "Maximize\n" : "Minimize\n");
    std::vector<std::pair<int, Rat>> obj;
    for (size_t j = 0; j < m.objective.size(); ++j)
        if (m.objective[j] != 0) obj.emplace_back(static_cast<int>(j), m.objective[j]);
    {
        std::ostringstream expr;
        Int scale = write_expr(expr, m, obj);
        if (scale != 1) os << "\\ objective scaled by " << scale.str() << "\n";
        for (const auto& [j, c] : obj)
            if (denominator(c) != 1) {
                os << "\\ " << m.vars[j].name << " true coefficient " << rat_str(c) << "\n";
            }
        os << " obj: " << expr.str() << "\n";
    }
    os << "Subject To\n";
    for (size_t i = 0; i < m.rows.size(); ++i) {
        const auto& row = m.rows[i];
        std::ostringstream expr;
        Int scale = write_expr(expr, m, row.terms);
        if (scale != 1) {
            os << "\\ row c" << i << " scaled by " << scale.str() << "; true rhs "
               << rat_str(row.rhs) << "\n";
            for (const auto& [j, c] : row.terms)
                if (denominator(c) != 1)
                    os << "\\ " << m.vars[j].name << " true coefficient " << rat_str(c) << "\n";
        }
        std::string rhs;
        decimal_exact(row.rhs * scale, rhs);
        os << " c" << i << ": " << expr.str() << " = " << rhs << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : m.vars) os << " 0 <= " << v.name << " <= 1\n";
    os << "End\n";
    return os.str();
}

}  // namespace extform
