#pragma once

#include "dmaplan/engine/search_types.hpp"

#include <string>

namespace dmaplan::harness {

// Flag-value spellings shared by the CLI, the config file, and reports.
const char *w_out_name(filter::WOut v);
const char *num_waiting_name(filter::NumWaiting v);
const char *who_send_name(filter::WhoSend v);
const char *num_withheld_name(filter::NumWithheld v);
const char *outgoing_h_name(filter::OutgoingH v);
const char *mode_name(engine::RunMode v);

// Throw std::invalid_argument on unknown spellings.
filter::WOut w_out_from(const std::string &s);
filter::NumWaiting num_waiting_from(const std::string &s);
filter::WhoSend who_send_from(const std::string &s);
filter::NumWithheld num_withheld_from(const std::string &s);
filter::OutgoingH outgoing_h_from(const std::string &s);
engine::RunMode mode_from(const std::string &s);

} // namespace dmaplan::harness
