#pragma once

#include <stdexcept>
#include <string>

namespace scamscope {

/// Base for every error raised by the library. `kind()` is a stable
/// machine-readable tag (e.g. "ContextOverflow") used in logs and in
/// serialized sessions.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SCAMSCOPE_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

// configuration and input validation
SCAMSCOPE_DEFINE_ERROR(ConfigError);
SCAMSCOPE_DEFINE_ERROR(InvalidUrl);
SCAMSCOPE_DEFINE_ERROR(ParseError);

// llm gateway
SCAMSCOPE_DEFINE_ERROR(TransportError);
SCAMSCOPE_DEFINE_ERROR(ContextOverflow);
SCAMSCOPE_DEFINE_ERROR(ScriptExhausted);
SCAMSCOPE_DEFINE_ERROR(InvalidRequest);

// prompt kit
SCAMSCOPE_DEFINE_ERROR(EmptyToolSet);
SCAMSCOPE_DEFINE_ERROR(TemplateError);

// react engine
SCAMSCOPE_DEFINE_ERROR(MalformedStep);
SCAMSCOPE_DEFINE_ERROR(ParseFailure);

// tools
SCAMSCOPE_DEFINE_ERROR(MustAccessFirst);
SCAMSCOPE_DEFINE_ERROR(EmptyDocument);
SCAMSCOPE_DEFINE_ERROR(QueryIsBareUrl);
SCAMSCOPE_DEFINE_ERROR(ProviderError);
SCAMSCOPE_DEFINE_ERROR(LookupError);
SCAMSCOPE_DEFINE_ERROR(ResolverUnreachable);
SCAMSCOPE_DEFINE_ERROR(UnknownTool);
SCAMSCOPE_DEFINE_ERROR(FixtureMiss);
SCAMSCOPE_DEFINE_ERROR(InvalidToolInput);

// verdict
SCAMSCOPE_DEFINE_ERROR(NoJsonFound);
SCAMSCOPE_DEFINE_ERROR(InvalidResultField);

// dataset pipeline
SCAMSCOPE_DEFINE_ERROR(UnknownUrlInAnnotations);
SCAMSCOPE_DEFINE_ERROR(InsufficientCell);
SCAMSCOPE_DEFINE_ERROR(InvalidTopList);

// evaluation
SCAMSCOPE_DEFINE_ERROR(MissingVerdict);

#undef SCAMSCOPE_DEFINE_ERROR

/// Page fetch failure. `reason()` is one of "timeout", "dns", "connect",
/// "tls", "redirects", "http" or "other".
class FetchError : public Error {
public:
    FetchError(std::string reason, const std::string& message)
        : Error("FetchError", message), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

}  // namespace scamscope

namespace scamscope {

/// Rebuilds a typed error from its serialized kind, so cached and recorded
/// failures can be caught by their concrete class. Unknown kinds become a
/// plain Error carrying that kind.
[[noreturn]] void throw_error(const std::string& kind, const std::string& message, const std::string& reason = {});

}  // namespace scamscope
