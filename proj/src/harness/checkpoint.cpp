#include "ecd/harness/checkpoint.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecd/harness/config.hpp"

namespace ecd::harness {

using nlohmann::json;

void save_checkpoint(const std::string& path, const EcdState& state,
                     const RngStream::State& rng) {
    json doc;
    doc["format"] = 1;
    doc["state"] = to_flat(state);
    json words = json::array();
    for (std::uint64_t w : rng.s) {
        words.push_back(std::to_string(w));
    }
    doc["rng"] = {
        {"s", words},
        {"spare", rng.spare},
        {"has_spare", rng.has_spare},
    };

    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open checkpoint file for writing: " + path);
    }
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) {
        throw IoError("failed writing checkpoint file: " + path);
    }
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open checkpoint file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("malformed checkpoint " + path + ": " + e.what());
    }

    try {
        if (doc.at("format").get<int>() != 1) {
            throw IoError("unsupported checkpoint format in " + path);
        }
        Checkpoint cp;
        cp.state = state_from_flat(doc.at("state").get<std::vector<Scalar>>());
        const json& rng = doc.at("rng");
        const json& words = rng.at("s");
        if (!words.is_array() || words.size() != cp.rng.s.size()) {
            throw IoError("malformed engine state in " + path);
        }
        for (std::size_t i = 0; i < cp.rng.s.size(); ++i) {
            cp.rng.s[i] = std::stoull(words[i].get<std::string>());
        }
        cp.rng.spare = rng.at("spare").get<double>();
        cp.rng.has_spare = rng.at("has_spare").get<bool>();
        return cp;
    } catch (const json::exception& e) {
        throw IoError("malformed checkpoint " + path + ": " + e.what());
    } catch (const std::invalid_argument&) {
        throw IoError("malformed engine state in " + path);
    } catch (const std::out_of_range&) {
        throw IoError("malformed engine state in " + path);
    }
}

}  // namespace ecd::harness
