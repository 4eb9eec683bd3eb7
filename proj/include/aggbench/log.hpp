#pragma once

#include <string>
#include <vector>

namespace aggbench {

// Emit a warning. Goes to stderr unless a WarningCapture is active on the
// calling thread, in which case it is collected there instead.
void warn(const std::string& message);

// Collects warnings raised on the current thread for its lifetime.
// Captures nest; the innermost one receives the messages.
class WarningCapture {
public:
    WarningCapture();
    ~WarningCapture();

    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    const std::vector<std::string>& messages() const noexcept { return messages_; }
    std::vector<std::string> take() noexcept { return std::move(messages_); }

private:
    friend void warn(const std::string&);
    std::vector<std::string> messages_;
    WarningCapture* previous_;
};

} // namespace aggbench
