#ifndef EXTFORM_CONFIGURATION_HPP
#define EXTFORM_CONFIGURATION_HPP

#include "extform/csp.hpp"

#include <compare>
#include <string>
#include <vector>

namespace extform {

/// Partial assignment on a support set W; vertices outside W implicitly hold
/// the blank symbol. Canonical: entries sorted by variable, equality structural.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<std::pair<int, int>> entries);

    static Configuration from_tuple(const std::vector<int>& support, const Tuple& t);

    bool defined(int v) const;
    int value(int v) const;  // throws if v outside the support
    std::vector<int> support() const;
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<std::pair<int, int>>& entries() const { return entries_; }

    /// Restriction to U: keeps entries with variable in U.
    Configuration restrict(const std::vector<int>& u) const;
    /// K[v <- a]; v must not already be in the support.
    Configuration assigned(int v, int a) const;
    /// Tuple of values over a sorted scope fully inside the support.
    Tuple tuple_on(const std::vector<int>& scope) const;

    /// "1=0.2=1"; the empty configuration serializes as "L".
    std::string str() const;

    auto operator<=>(const Configuration&) const = default;

private:
    std::vector<std::pair<int, int>> entries_;  // (variable, value), sorted by variable
};

/// All configurations of W: in-domain tuples over W whose restriction satisfies
/// every hard constraint with scope fully inside W. Deterministic order
/// (lexicographic over ascending variables, values in domain order).
std::vector<Configuration> enumerate_configurations(const CspInstance& q,
                                                    const std::vector<int>& w);

}  // namespace extform

#endif
