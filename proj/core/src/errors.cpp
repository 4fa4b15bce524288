#include "scamscope/errors.hpp"

#include <map>

namespace scamscope {

namespace {

template <typename E>
[[noreturn]] void raise(const std::string& message) {
    throw E(message);
}

using Thrower = void (*)(const std::string&);

const std::map<std::string, Thrower>& throwers() {
    static const std::map<std::string, Thrower> table = {
        {"ConfigError", raise<ConfigError>},
        {"InvalidUrl", raise<InvalidUrl>},
        {"ParseError", raise<ParseError>},
        {"TransportError", raise<TransportError>},
        {"ContextOverflow", raise<ContextOverflow>},
        {"ScriptExhausted", raise<ScriptExhausted>},
        {"InvalidRequest", raise<InvalidRequest>},
        {"EmptyToolSet", raise<EmptyToolSet>},
        {"TemplateError", raise<TemplateError>},
        {"MalformedStep", raise<MalformedStep>},
        {"ParseFailure", raise<ParseFailure>},
        {"MustAccessFirst", raise<MustAccessFirst>},
        {"EmptyDocument", raise<EmptyDocument>},
        {"QueryIsBareUrl", raise<QueryIsBareUrl>},
        {"ProviderError", raise<ProviderError>},
        {"LookupError", raise<LookupError>},
        {"ResolverUnreachable", raise<ResolverUnreachable>},
        {"UnknownTool", raise<UnknownTool>},
        {"FixtureMiss", raise<FixtureMiss>},
        {"InvalidToolInput", raise<InvalidToolInput>},
        {"NoJsonFound", raise<NoJsonFound>},
        {"InvalidResultField", raise<InvalidResultField>},
        {"UnknownUrlInAnnotations", raise<UnknownUrlInAnnotations>},
        {"InsufficientCell", raise<InsufficientCell>},
        {"InvalidTopList", raise<InvalidTopList>},
        {"MissingVerdict", raise<MissingVerdict>},
    };
    return table;
}

}  // namespace

void throw_error(const std::string& kind, const std::string& message, const std::string& reason) {
    if (kind == "FetchError") throw FetchError(reason.empty() ? "other" : reason, message);
    if (const auto it = throwers().find(kind); it != throwers().end()) it->second(message);
    throw Error(kind, message);
}

}  // namespace scamscope
