#include "extform/json_io.hpp"

#include <json.hpp>

#include <sstream>

namespace extform {

using nlohmann::json;

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw CspError("BadInstance", "rational must be an integer or a \"p/q\" string");
}

Tuple tuple_from_json(const json& j) {
    if (!j.is_array()) throw CspError("BadInstance", "tuple must be an array");
    Tuple t;
    for (const auto& x : j) t.push_back(x.get<int>());
    return t;
}

}  // namespace

CspInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CspError("BadInstance", std::string("JSON parse failure: ") + e.what());
    }
    try {
        CspInstance q;
        q.n = j.at("n").get<int>();
        for (const auto& d : j.at("domains")) {
            std::vector<int> dom;
            for (const auto& x : d) dom.push_back(x.get<int>());
            std::sort(dom.begin(), dom.end());
            dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
            q.domains.push_back(std::move(dom));
        }
        std::string sense = j.value("sense", "max");
        if (sense == "max")
            q.sense = Sense::Max;
        else if (sense == "min")
            q.sense = Sense::Min;
        else
            throw CspError("BadInstance", "sense must be \"max\" or \"min\"");

        for (const auto& h : j.value("hard", json::array())) {
            HardConstraint hc;
            for (const auto& v : h.at("scope")) hc.scope.push_back(v.get<int>());
            for (const auto& t : h.at("allowed")) hc.allowed.insert(tuple_from_json(t));
            q.hard.push_back(std::move(hc));
        }
        int next_id = 0;
        for (const auto& s : j.value("soft", json::array())) {
            SoftConstraint sc;
            sc.id = s.value("id", next_id);
            next_id = std::max(next_id, sc.id + 1);
            for (const auto& v : s.at("scope")) sc.scope.push_back(v.get<int>());
            sc.weight = s.contains("weight") ? rat_from_json(s.at("weight")) : Rat(1);
            if (s.contains("allowed")) {
                sc.relation_form = true;
                for (const auto& t : s.at("allowed")) sc.payoff[tuple_from_json(t)] = 1;
            } else if (s.contains("payoff")) {
                sc.relation_form = false;
                for (const auto& p : s.at("payoff"))
                    sc.payoff[tuple_from_json(p.at("tuple"))] = rat_from_json(p.at("value"));
            } else {
                throw CspError("BadInstance", "soft constraint needs \"allowed\" or \"payoff\"");
            }
            q.soft.push_back(std::move(sc));
        }

        merge_hard_scopes(q);
        auto errs = validate(q);
        if (!errs.empty()) {
            std::ostringstream os;
            for (const auto& e : errs) os << e.code << " (" << e.detail << "); ";
            throw CspError("BadInstance", os.str());
        }
        return q;
    } catch (const json::exception& e) {
        throw CspError("BadInstance", std::string("instance JSON: ") + e.what());
    }
}

std::string instance_to_json(const CspInstance& q) {
    json j;
    j["n"] = q.n;
    j["domains"] = q.domains;
    j["sense"] = q.sense == Sense::Max ? "max" : "min";
    j["hard"] = json::array();
    for (const auto& h : q.hard) {
        json hj;
        hj["scope"] = h.scope;
        hj["allowed"] = json::array();
        for (const auto& t : h.allowed) hj["allowed"].push_back(t);
        j["hard"].push_back(std::move(hj));
    }
    j["soft"] = json::array();
    for (const auto& c : q.soft) {
        json cj;
        cj["id"] = c.id;
        cj["scope"] = c.scope;
        cj["weight"] = rat_str(c.weight);
        if (c.relation_form) {
            cj["allowed"] = json::array();
            for (const auto& [t, v] : c.payoff)
                if (v == 1) cj["allowed"].push_back(t);
        } else {
            cj["payoff"] = json::array();
            for (const auto& [t, v] : c.payoff)
                cj["payoff"].push_back({{"tuple", t}, {"value", rat_str(v)}});
        }
        j["soft"].push_back(std::move(cj));
    }
    return j.dump(2) + "\n";
}

}  // namespace extform
