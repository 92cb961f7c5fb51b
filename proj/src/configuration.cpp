#include "extform/configuration.hpp"

#include <algorithm>
#include <sstream>

namespace extform {

Configuration::Configuration(std::vector<std::pair<int, int>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    for (size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].first == entries_[i - 1].first)
            throw CspError("DuplicateSupport", "variable repeated in configuration");
}

Configuration Configuration::from_tuple(const std::vector<int>& support, const Tuple& t) {
    std::vector<std::pair<int, int>> e;
    e.reserve(support.size());
    for (size_t i = 0; i < support.size(); ++i) e.emplace_back(support[i], t[i]);
    return Configuration(std::move(e));
}

bool Configuration::defined(int v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<int, int>{v, INT_MIN});
    return it != entries_.end() && it->first == v;
}

int Configuration::value(int v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<int, int>{v, INT_MIN});
    if (it == entries_.end() || it->first != v)
        throw CspError("BlankValue", "variable " + std::to_string(v) + " outside support");
    return it->second;
}

std::vector<int> Configuration::support() const {
    std::vector<int> w;
    w.reserve(entries_.size());
    for (const auto& [v, a] : entries_) w.push_back(v);
    return w;
}

Configuration Configuration::restrict(const std::vector<int>& u) const {
    std::vector<std::pair<int, int>> e;
    for (const auto& p : entries_)
        if (std::binary_search(u.begin(), u.end(), p.first)) e.push_back(p);
    Configuration r;
    r.entries_ = std::move(e);
    return r;
}

Configuration Configuration::assigned(int v, int a) const {
    if (defined(v))
        throw CspError("DuplicateSupport", "variable " + std::to_string(v) + " already assigned");
    Configuration r = *this;
    r.entries_.emplace_back(v, a);
    std::sort(r.entries_.begin(), r.entries_.end());
    return r;
}

Tuple Configuration::tuple_on(const std::vector<int>& scope) const {
    Tuple t;
    t.reserve(scope.size());
    for (int v : scope) t.push_back(value(v));
    return t;
}

std::string Configuration::str() const {
    if (entries_.empty()) return "L";
    std::ostringstream os;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ".";
        os << entries_[i].first << "=" << entries_[i].second;
    }
    return os.str();
}

std::vector<Configuration> enumerate_configurations(const CspInstance& q,
                                                    const std::vector<int>& w) {
    std::vector<int> vars = w;
    std::sort(vars.begin(), vars.end());

    // Hard constraints fully inside W, with positions precomputed.
    struct LocalHard {
        std::vector<size_t> pos;
        const std::set<Tuple>* allowed;
    };
    std::vector<LocalHard> local;
    for (const auto& h : q.hard) {
        bool inside = true;
        std::vector<size_t> pos;
        for (int v : h.scope) {
            auto it = std::lower_bound(vars.begin(), vars.end(), v);
            if (it == vars.end() || *it != v) {
                inside = false;
                break;
            }
            pos.push_back(static_cast<size_t>(it - vars.begin()));
        }
        if (inside) local.push_back({std::move(pos), &h.allowed});
    }

    std::vector<Configuration> out;
    Tuple t(vars.size());
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == vars.size()) {
            for (const auto& lh : local) {
                Tuple sub;
                sub.reserve(lh.pos.size());
                for (size_t p : lh.pos) sub.push_back(t[p]);
                if (lh.allowed->count(sub) == 0) return;
            }
            out.push_back(Configuration::from_tuple(vars, t));
            return;
        }
        for (int a : q.domain(vars[i])) {
            t[i] = a;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace extform
