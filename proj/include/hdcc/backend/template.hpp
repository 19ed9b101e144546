#pragma once

#include "hdcc/backend/templates_data.hpp" // generated from templates/

#include <map>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hdcc::backend {

/// A binding was missing for placeholder `key`.
class TemplateError : public std::runtime_error {
public:
    explicit TemplateError(std::string key)
        : std::runtime_error("no binding for template placeholder {" + key + "}"), key_(std::move(key))
    {
    }
    const std::string &key() const { return key_; }

private:
    std::string key_;
};

/// Placeholders are `{KEY}` with KEY in [A-Z][A-Z_]*.
inline const std::regex &placeholder_pattern()
{
    static const std::regex re(R"(\{([A-Z][A-Z_]*)\})");
    return re;
}

struct TemplateFragment {
    std::string id;
    std::string content;

    std::set<std::string> placeholders() const
    {
        std::set<std::string> keys;
        for (std::sregex_iterator it(content.begin(), content.end(), placeholder_pattern()), end; it != end; ++it)
            keys.insert((*it)[1].str());
        return keys;
    }
};

using Bindings = std::map<std::string, std::string, std::less<>>;

/// Replaces every placeholder with its binding in one pass; substituted text
/// is not scanned again.
inline std::string instantiate(const TemplateFragment &fragment, const Bindings &bindings)
{
    const std::string &text = fragment.content;
    std::string out;
    out.reserve(text.size());
    auto last = text.cbegin();
    for (std::sregex_iterator it(text.begin(), text.end(), placeholder_pattern()), end; it != end; ++it) {
        const auto &m = *it;
        const auto found = bindings.find(m[1].str());
        if (found == bindings.end())
            throw TemplateError(m[1].str());
        out.append(last, m[0].first);
        out += found->second;
        last = m[0].second;
    }
    out.append(last, text.cend());
    return out;
}

/// The fragments shipped under templates/, by id ("runtime.h",
/// "kernels/batchbind.c", ...).
inline const TemplateFragment &fragment(std::string_view id)
{
    static const std::map<std::string, TemplateFragment, std::less<>> all = [] {
        std::map<std::string, TemplateFragment, std::less<>> m;
        for (const auto &t : embedded::kTemplates)
            m.emplace(t.id, TemplateFragment{t.id, t.text});
        return m;
    }();
    const auto it = all.find(id);
    if (it == all.end())
        throw std::out_of_range("no template named " + std::string(id));
    return it->second;
}

inline std::vector<std::string> fragment_ids()
{
    std::vector<std::string> ids;
    for (const auto &t : embedded::kTemplates)
        ids.emplace_back(t.id);
    return ids;
}

} // namespace hdcc::backend
