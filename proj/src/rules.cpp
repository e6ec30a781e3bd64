#include "trigather/rules.hpp"

namespace trigather {

std::string to_string(Classification c) {
    switch (c) {
    case Classification::Downward:         return "Downward";
    case Classification::DownslantLeft:    return "DownslantLeft";
    case Classification::DownslantRight:   return "DownslantRight";
    case Classification::NonExtreme:       return "NonExtreme";
    case Classification::Staying:          return "Staying";
    case Classification::Terminating:      return "Terminating";
    case Classification::Idle:             return "Idle";
    case Classification::DownwardII:       return "DownwardII";
    case Classification::DownslantLeftII:  return "DownslantLeftII";
    case Classification::DownslantRightII: return "DownslantRightII";
    case Classification::NoGuard:          return "NoGuard";
    }
    return "Idle";
}

std::optional<Classification> classification_from_string(const std::string& name) {
    static const std::pair<const char*, Classification> table[] = {
        {"Downward", Classification::Downward},
        {"DownslantLeft", Classification::DownslantLeft},
        {"DownslantRight", Classification::DownslantRight},
        {"NonExtreme", Classification::NonExtreme},
        {"Staying", Classification::Staying},
        {"Terminating", Classification::Terminating},
        {"Idle", Classification::Idle},
        {"DownwardII", Classification::DownwardII},
        {"DownslantLeftII", Classification::DownslantLeftII},
        {"DownslantRightII", Classification::DownslantRightII},
        {"NoGuard", Classification::NoGuard},
    };
    for (const auto& [text, value] : table)
        if (name == text) return value;
    return std::nullopt;
}

} // namespace trigather
