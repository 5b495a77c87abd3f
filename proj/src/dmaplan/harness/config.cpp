#include "dmaplan/harness/config.hpp"

#include <stdexcept>

namespace dmaplan::harness {

namespace {
[[noreturn]] void bad(const char *flag, const std::string &value) {
    throw std::invalid_argument(std::string("invalid value '") + value + "' for " + flag);
}
} // namespace

const char *w_out_name(filter::WOut v) {
    switch (v) {
    case filter::WOut::OFF: return "off";
    case filter::WOut::W1: return "1";
    case filter::WOut::W2: return "2";
    }
    return "?";
}

const char *num_waiting_name(filter::NumWaiting v) {
    switch (v) {
    case filter::NumWaiting::ONE: return "1";
    case filter::NumWaiting::HALF: return "half";
    case filter::NumWaiting::ALL: return "all";
    }
    return "?";
}

const char *who_send_name(filter::WhoSend v) {
    switch (v) {
    case filter::WhoSend::WAITING: return "waiting";
    case filter::WhoSend::NOT_WAITING: return "notwaiting";
    case filter::WhoSend::ALL: return "all";
    }
    return "?";
}

const char *num_withheld_name(filter::NumWithheld v) {
    switch (v) {
    case filter::NumWithheld::NONE: return "none";
    case filter::NumWithheld::ONE: return "1";
    case filter::NumWithheld::GROUP: return "group";
    case filter::NumWithheld::ALL: return "all";
    }
    return "?";
}

const char *outgoing_h_name(filter::OutgoingH v) {
    return v == filter::OutgoingH::NONE ? "none" : "goals-relaxed";
}

const char *mode_name(engine::RunMode v) {
    return v == engine::RunMode::SIM ? "sim" : "threads";
}

filter::WOut w_out_from(const std::string &s) {
    if (s == "off") return filter::WOut::OFF;
    if (s == "1") return filter::WOut::W1;
    if (s == "2") return filter::WOut::W2;
    bad("--w-out", s);
}

filter::NumWaiting num_waiting_from(const std::string &s) {
    if (s == "1") return filter::NumWaiting::ONE;
    if (s == "half") return filter::NumWaiting::HALF;
    if (s == "all") return filter::NumWaiting::ALL;
    bad("--num-waiting", s);
}

filter::WhoSend who_send_from(const std::string &s) {
    if (s == "waiting") return filter::WhoSend::WAITING;
    if (s == "notwaiting") return filter::WhoSend::NOT_WAITING;
    if (s == "all") return filter::WhoSend::ALL;
    bad("--who-send", s);
}

filter::NumWithheld num_withheld_from(const std::string &s) {
    if (s == "none") return filter::NumWithheld::NONE;
    if (s == "1") return filter::NumWithheld::ONE;
    if (s == "group") return filter::NumWithheld::GROUP;
    if (s == "all") return filter::NumWithheld::ALL;
    bad("--num-withheld", s);
}

filter::OutgoingH outgoing_h_from(const std::string &s) {
    if (s == "none") return filter::OutgoingH::NONE;
    if (s == "goals-relaxed") return filter::OutgoingH::GOALS_RELAXED;
    bad("--outgoing-h", s);
}

engine::RunMode mode_from(const std::string &s) {
    if (s == "sim") return engine::RunMode::SIM;
    if (s == "threads") return engine::RunMode::THREADS;
    bad("--mode", s);
}

} // namespace dmaplan::harness
