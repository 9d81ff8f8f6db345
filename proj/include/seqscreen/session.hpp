#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"

#include "seqscreen/scenario.hpp"

namespace seqscreen {

struct SessionState {
    std::string session_id;
    ScenarioDocument scenario;
    std::optional<PosteriorReport> posterior;  // empty while the sequence is empty
    std::string created_at;
    std::string updated_at;
};

nlohmann::json to_json(const SessionState& state);

// In-memory what-if sessions. The posterior is always recomputed by folding
// the stored sequence from the prior, so state can be rebuilt from the
// scenario alone. Mutations of a single session are serialised; different
// sessions proceed independently.
class SessionStore {
public:
    SessionState create(ScenarioDocument scenario);
    SessionState get(const std::string& id) const;

    // Appends one outcome and returns the refreshed state. A failing fold
    // leaves the session untouched.
    SessionState append(const std::string& id, const SequenceEntry& entry);

    // Removes the last outcome. Throws ValidationError when there is none.
    SessionState undo_last(const std::string& id);

    // Posterior after a hypothetical extra outcome; the session is not modified.
    PosteriorReport what_if(const std::string& id, const SequenceEntry& entry) const;

    bool erase(const std::string& id);
    std::size_t size() const;

    nlohmann::json snapshot() const;
    void restore(const nlohmann::json& snapshot);

    void save(const std::filesystem::path& path) const;
    // Missing file is not an error; returns the number of sessions loaded.
    std::size_t load(const std::filesystem::path& path);

private:
    struct Slot {
        mutable std::mutex mutex;
        SessionState state;
    };

    std::shared_ptr<Slot> find(const std::string& id) const;
    static std::optional<PosteriorReport> replay(const ScenarioDocument& scenario);

    mutable std::shared_mutex mutex_;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace seqscreen
