#include "dmaplan/filter/filter.hpp"

#include <algorithm>

namespace dmaplan::filter {

MessageFilter::MessageFilter(const FilterPolicy &policy, int num_public_facts)
    : policy_(policy),
      table_(num_public_facts, policy.w_out == WOut::W2 ? 2 : 1) {}

bool MessageFilter::secure_duplicate(const OutboundState &state) const {
    return policy_.secure_check && sent_projections_.count(state.payload.public_bytes) > 0;
}

void MessageFilter::record_sent(const OutboundState &state) {
    if (policy_.secure_check)
        sent_projections_.insert(state.payload.public_bytes);
}

Decision MessageFilter::on_public_child(OutboundState &state) {
    // Dedup precedes the novelty probe.
    if (secure_duplicate(state)) {
        ++suppressed_;
        return Decision::SUPPRESSED;
    }
    if (policy_.w_out == WOut::OFF) {
        record_sent(state);
        return Decision::SENT;
    }

    int value = table_.probe(state.projection, state.h_key);
    if (value <= outgoing_cap(policy_.w_out)) {
        table_.commit(state.projection, state.h_key);
        record_sent(state);
        return Decision::SENT;
    }
    if (policy_.num_withheld == NumWithheld::NONE) {
        ++suppressed_;
        return Decision::SUPPRESSED;
    }
    withheld_.push_back(std::move(state));
    withheld_peak_ = std::max<std::uint64_t>(withheld_peak_, withheld_.size());
    return Decision::WITHHELD;
}

bool MessageFilter::release_due(const std::vector<net::AgentStatus> &statuses, int self) const {
    if (policy_.num_withheld == NumWithheld::NONE)
        return false;
    int waiting = 0;
    for (net::AgentStatus s : statuses)
        if (net::is_waiting(s))
            ++waiting;
    if (waiting < waiting_threshold(policy_.num_waiting, static_cast<int>(statuses.size())))
        return false;
    switch (policy_.who_send) {
    case WhoSend::ALL: return true;
    case WhoSend::WAITING: return net::is_waiting(statuses[static_cast<std::size_t>(self)]);
    case WhoSend::NOT_WAITING: return !net::is_waiting(statuses[static_cast<std::size_t>(self)]);
    }
    return false;
}

std::vector<OutboundState> MessageFilter::release_withheld() {
    last_release_consumed_ = 0;
    std::vector<OutboundState> out;
    if (withheld_.empty() || policy_.num_withheld == NumWithheld::NONE)
        return out;

    std::vector<std::size_t> picked;
    if (policy_.num_withheld == NumWithheld::ALL) {
        for (std::size_t i = 0; i < withheld_.size(); ++i)
            picked.push_back(i);
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < withheld_.size(); ++i)
            if (withheld_[i].key < withheld_[best].key)
                best = i;
        if (policy_.num_withheld == NumWithheld::ONE) {
            picked.push_back(best);
        } else { // GROUP: every entry tied with the minimum key
            for (std::size_t i = 0; i < withheld_.size(); ++i)
                if (withheld_[i].key == withheld_[best].key)
                    picked.push_back(i);
        }
    }

    for (std::size_t i : picked) {
        OutboundState &entry = withheld_[i];
        ++last_release_consumed_;
        if (secure_duplicate(entry)) {
            ++suppressed_;
            continue;
        }
        // Already probed when first seen; commit now that it really goes out.
        table_.commit(entry.projection, entry.h_key);
        record_sent(entry);
        out.push_back(std::move(entry));
    }
    // Remove picked entries back to front.
    for (auto it = picked.rbegin(); it != picked.rend(); ++it)
        withheld_.erase(withheld_.begin() + static_cast<std::ptrdiff_t>(*it));
    return out;
}

} // namespace dmaplan::filter
