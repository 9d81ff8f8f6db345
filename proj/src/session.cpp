#include "seqscreen/session.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "seqscreen/report.hpp"

namespace seqscreen {

using nlohmann::json;

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[40];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buffer, static_cast<int>(millis));
    return out;
}

// 128 bits from the OS entropy source, hex encoded.
std::string new_token() {
    static thread_local std::random_device device;
    std::array<std::uint32_t, 4> words{};
    for (auto& w : words) w = device();
    std::string token;
    char chunk[9];
    for (auto w : words) {
        std::snprintf(chunk, sizeof chunk, "%08x", w);
        token += chunk;
    }
    return token;
}

[[noreturn]] void not_found(const std::string& id) {
    throw ScreeningError(ErrorCode::SessionNotFound, "no session with id '" + id + "'");
}

}  // namespace

json to_json(const SessionState& state) {
    json trace = json::array();
    if (state.posterior) trace = to_json(*state.posterior)["trace"];
    return json{
        {"session_id", state.session_id},
        {"scenario", to_json(state.scenario)},
        {"posterior", state.posterior ? to_json(*state.posterior) : json(nullptr)},
        {"posterior_trace", std::move(trace)},
        {"created_at", state.created_at},
        {"updated_at", state.updated_at},
    };
}

std::optional<PosteriorReport> SessionStore::replay(const ScenarioDocument& scenario) {
    if (scenario.sequence.empty()) return std::nullopt;
    return posterior_fold(TestSequence(scenario.outcomes()), scenario.pretest_probability);
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
    std::shared_lock lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) not_found(id);
    return it->second;
}

SessionState SessionStore::create(ScenarioDocument scenario) {
    auto slot = std::make_shared<Slot>();
    slot->state.posterior = replay(scenario);
    slot->state.scenario = std::move(scenario);
    slot->state.created_at = utc_now();
    slot->state.updated_at = slot->state.created_at;

    std::unique_lock lock(mutex_);
    std::string id;
    do {
        id = new_token();
    } while (sessions_.contains(id));
    slot->state.session_id = id;
    sessions_.emplace(id, slot);
    return slot->state;
}

SessionState SessionStore::get(const std::string& id) const {
    const auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return slot->state;
}

SessionState SessionStore::append(const std::string& id, const SequenceEntry& entry) {
    const auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    ScenarioDocument next = slot->state.scenario;
    next.resolve(entry);
    next.sequence.push_back(entry);
    auto posterior = replay(next);  // throws before anything is modified
    slot->state.scenario = std::move(next);
    slot->state.posterior = std::move(posterior);
    slot->state.updated_at = utc_now();
    return slot->state;
}

SessionState SessionStore::undo_last(const std::string& id) {
    const auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    if (slot->state.scenario.sequence.empty()) {
        throw ScreeningError(ErrorCode::ValidationError, "session '" + id + "' has no outcome to undo");
    }
    ScenarioDocument next = slot->state.scenario;
    next.sequence.pop_back();
    slot->state.posterior = replay(next);
    slot->state.scenario = std::move(next);
    slot->state.updated_at = utc_now();
    return slot->state;
}

PosteriorReport SessionStore::what_if(const std::string& id, const SequenceEntry& entry) const {
    const auto slot = find(id);
    ScenarioDocument hypothetical;
    {
        std::lock_guard lock(slot->mutex);
        hypothetical = slot->state.scenario;
    }
    hypothetical.resolve(entry);
    hypothetical.sequence.push_back(entry);
    return *replay(hypothetical);
}

bool SessionStore::erase(const std::string& id) {
    std::unique_lock lock(mutex_);
    return sessions_.erase(id) > 0;
}

std::size_t SessionStore::size() const {
    std::shared_lock lock(mutex_);
    return sessions_.size();
}

json SessionStore::snapshot() const {
    json sessions = json::array();
    std::shared_lock lock(mutex_);
    for (const auto& [id, slot] : sessions_) {
        std::lock_guard slot_lock(slot->mutex);
        sessions.push_back({{"session_id", id},
                            {"scenario", to_json(slot->state.scenario)},
                            {"created_at", slot->state.created_at},
                            {"updated_at", slot->state.updated_at}});
    }
    return json{{"version", 1}, {"sessions", std::move(sessions)}};
}

void SessionStore::restore(const json& snapshot) {
    if (!snapshot.is_object() || snapshot.value("version", 0) != 1 || !snapshot.contains("sessions") ||
        !snapshot["sessions"].is_array()) {
        throw ScreeningError(ErrorCode::ValidationError, "unrecognised session journal");
    }
    std::map<std::string, std::shared_ptr<Slot>> loaded;
    try {
        for (const auto& entry : snapshot["sessions"]) {
        auto slot = std::make_shared<Slot>();
        slot->state.session_id = entry.at("session_id").get<std::string>();
        slot->state.scenario = scenario_from_json(entry.at("scenario"));
        slot->state.posterior = replay(slot->state.scenario);
        slot->state.created_at = entry.at("created_at").get<std::string>();
        slot->state.updated_at = entry.at("updated_at").get<std::string>();
        loaded.emplace(slot->state.session_id, std::move(slot));
        }
    } catch (const json::exception& e) {
        throw ScreeningError(ErrorCode::ValidationError, std::string("malformed session journal entry: ") + e.what());
    }
    std::unique_lock lock(mutex_);
    sessions_ = std::move(loaded);
}

void SessionStore::save(const std::filesystem::path& path) const {
    const std::string text = render_json(snapshot());
    const auto temporary = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write session journal " + temporary.string());
        out << text;
        if (!out.flush()) throw std::runtime_error("cannot write session journal " + temporary.string());
    }
    std::filesystem::rename(temporary, path);
}

std::size_t SessionStore::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return 0;
    std::stringstream buffer;
    buffer << in.rdbuf();
    json document;
    try {
        document = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ScreeningError(ErrorCode::ValidationError, "corrupt session journal " + path.string() + ": " + e.what());
    }
    restore(document);
    return size();
}

}  // namespace seqscreen
