#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

namespace scamscope {

/// Source of wall-clock time for timestamps and durations. Replay runs use
/// a frozen clock so their output is byte-identical across runs.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() = 0;  // milliseconds since the epoch
    std::string now_iso();
};

class SystemClock final : public Clock {
public:
    std::int64_t now_ms() override;
};

class FrozenClock final : public Clock {
public:
    explicit FrozenClock(std::int64_t ms = 0) : ms_(ms) {}
    std::int64_t now_ms() override { return ms_; }

private:
    std::int64_t ms_;
};

/// "YYYY-MM-DDTHH:MM:SSZ" for a millisecond epoch timestamp.
std::string format_iso8601(std::int64_t epoch_ms);

std::shared_ptr<Clock> system_clock();

}  // namespace scamscope
