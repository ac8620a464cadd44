#include "core/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace shearwave {

VorticityProfile::VorticityProfile(std::vector<double> breakpoints, std::vector<double> vorticities)
    : breakpoints_(std::move(breakpoints)), vorticities_(std::move(vorticities)) {
    if (breakpoints_.size() < 2)
        throw InvalidInput("breakpoints: need at least 2 entries");
    if (vorticities_.size() + 1 != breakpoints_.size())
        throw InvalidInput("vorticities: expected " + std::to_string(breakpoints_.size() - 1) +
                           " entries, got " + std::to_string(vorticities_.size()));
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i]))
            throw InvalidInput("breakpoints[" + std::to_string(i) + "]: not finite");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw InvalidInput("breakpoints[" + std::to_string(i) + "]: must exceed breakpoints[" +
                               std::to_string(i - 1) + "]");
    }
    if (breakpoints_.back() != 0.0)
        throw InvalidInput("breakpoints[" + std::to_string(breakpoints_.size() - 1) +
                           "]: last breakpoint must be exactly 0");
    for (std::size_t i = 0; i < vorticities_.size(); ++i)
        if (!std::isfinite(vorticities_[i]))
            throw InvalidInput("vorticities[" + std::to_string(i) + "]: not finite");

    // Gamma at breakpoints, anchored at Gamma(0) = 0 and recurred downward.
    const std::size_t n = vorticities_.size();
    gamma_bp_.assign(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        gamma_bp_[i] = gamma_bp_[i + 1] + vorticities_[i] * (breakpoints_[i] - breakpoints_[i + 1]);
    gamma_sup_ = *std::max_element(gamma_bp_.begin(), gamma_bp_.end());
}

void VorticityProfile::check_domain(double p) const {
    if (!(p >= breakpoints_.front() && p <= 0.0))
        throw DomainError("p = " + std::to_string(p) + " outside [" +
                          std::to_string(breakpoints_.front()) + ", 0]");
}

std::size_t VorticityProfile::layer_of(double p) const {
    check_domain(p);
    // First breakpoint strictly greater than p; its index is the 1-based layer.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), p);
    if (it == breakpoints_.end())
        return vorticities_.size();  // p == 0
    return static_cast<std::size_t>(it - breakpoints_.begin());
}

double VorticityProfile::gamma_at(double p) const { return vorticities_[layer_of(p) - 1]; }

double VorticityProfile::big_gamma(double p) const {
    const std::size_t i = layer_of(p);
    // Gamma(p) = Gamma(p_i) + gamma_i (p - p_i) on [p_{i-1}, p_i].
    return gamma_bp_[i] + vorticities_[i - 1] * (p - breakpoints_[i]);
}

namespace {

using nlohmann::json;

std::vector<double> read_number_array(const json& j, const std::string& key) {
    const auto& arr = j.at(key);
    if (!arr.is_array())
        throw InvalidInput(key + ": expected an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw InvalidInput(key + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(arr[i].get<double>());
    }
    return out;
}

}  // namespace

VorticityProfile VorticityProfile::from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("profile: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidInput("profile: expected an object");
    for (const auto& item : j.items())
        if (item.key() != "breakpoints" && item.key() != "vorticities")
            throw InvalidInput("profile: unknown key '" + item.key() + "'");
    if (!j.contains("breakpoints"))
        throw InvalidInput("profile: missing key 'breakpoints'");
    if (!j.contains("vorticities"))
        throw InvalidInput("profile: missing key 'vorticities'");
    return VorticityProfile(read_number_array(j, "breakpoints"), read_number_array(j, "vorticities"));
}

std::string VorticityProfile::to_json() const {
    json j;
    j["breakpoints"] = breakpoints_;
    j["vorticities"] = vorticities_;
    return j.dump();
}

VorticityProfile irrotational_profile(double p0) {
    return VorticityProfile({p0, 0.0}, {0.0});
}

VorticityProfile constant_vorticity_profile(double p0, double gamma) {
    return VorticityProfile({p0, 0.0}, {gamma});
}

}  // namespace shearwave
