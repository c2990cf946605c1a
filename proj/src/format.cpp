#include "wpbisim/format.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "wpbisim/errors.hpp"

namespace wpb {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

/// Whitespace-separated tokens of line[from, to).
std::vector<Token> words(std::string_view line, std::size_t from, std::size_t to) {
    std::vector<Token> out;
    std::size_t i = from;
    while (i < to) {
        while (i < to && is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < to && !is_space(line[i])) ++i;
        if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

class PaReader {
public:
    ProbAutomaton read(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            std::string_view line = text.substr(pos, end - pos);
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line_ = line_no;
            if (!trim(line).empty()) handle(line);
            pos = end + 1;
        }
        if (!pa_) throw ParseError("missing 'pa <name>' header", 1, 1);
        if (!start_set_) throw ParseError("missing 'start:' line", line_no, 1);
        return std::move(*pa_);
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t column) const {
        throw ParseError(what, line_, column);
    }

    State state(const Token& tok) const {
        auto s = pa_->find_state(tok.text);
        if (!s) fail("unknown state '" + tok.text + "'", tok.column);
        return *s;
    }

    void handle(std::string_view line) {
        const auto toks = words(line, 0, line.size());
        if (!pa_) {
            if (toks[0].text != "pa" || toks.size() != 2) fail("expected 'pa <name>'", toks[0].column);
            pa_.emplace(toks[1].text);
            return;
        }
        const std::string& head = toks[0].text;
        if (head == "pa") fail("duplicate 'pa' header", toks[0].column);
        if (head == "states:") return declare_states(toks);
        if (head == "start:") {
            if (toks.size() != 2) fail("expected 'start: <state>'", toks[0].column);
            if (start_set_) fail("duplicate 'start:' line", toks[0].column);
            pa_->set_start(state(toks[1]));
            start_set_ = true;
            return;
        }
        if (head == "external:") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i].text == kTauName) fail("'tau' cannot be declared external", toks[i].column);
                check_name(toks[i]);
                if (pa_->find_action(toks[i].text)) fail("duplicate action '" + toks[i].text + "'", toks[i].column);
                pa_->add_action(toks[i].text);
            }
            return;
        }
        if (head == "transitions:") {
            if (toks.size() != 1) fail("unexpected text after 'transitions:'", toks[1].column);
            in_transitions_ = true;
            return;
        }
        if (!in_transitions_) fail("unexpected '" + head + "'", toks[0].column);
        transition(line);
    }

    void check_name(const Token& tok) const {
        for (char c : tok.text)
            if (c == ':' || c == ',' || c == '{' || c == '}' || c == '|')
                fail("invalid character in name '" + tok.text + "'", tok.column);
        if (tok.text == "->") fail("invalid name '->'", tok.column);
    }

    void declare_states(const std::vector<Token>& toks) {
        if (pa_->num_states() > 0) fail("duplicate 'states:' line", toks[0].column);
        if (toks.size() < 2) fail("at least one state is required", toks[0].column);
        for (std::size_t i = 1; i < toks.size(); ++i) {
            check_name(toks[i]);
            if (pa_->find_state(toks[i].text)) fail("duplicate state '" + toks[i].text + "'", toks[i].column);
            pa_->add_state(toks[i].text);
        }
    }

    void transition(std::string_view line) {
        const std::size_t arrow = line.find("->");
        if (arrow == std::string_view::npos) fail("expected '<state> <action> -> <targets>'", 1);
        const auto lhs = words(line, 0, arrow);
        if (lhs.size() != 2) fail("expected '<state> <action>' before '->'", lhs.empty() ? 1 : lhs[0].column);
        const State source = state(lhs[0]);
        const auto action = pa_->find_action(lhs[1].text);
        if (!action) fail("unknown action '" + lhs[1].text + "'", lhs[1].column);

        std::map<State, Rational> target;
        Rational sum;
        std::size_t i = arrow + 2;
        const std::size_t first_column = i + 1;
        while (i <= line.size()) {
            std::size_t comma = line.find(',', i);
            if (comma == std::string_view::npos) comma = line.size();
            const auto item = words(line, i, comma);
            const std::size_t col = item.empty() ? i + 1 : item[0].column;
            if (item.size() != 1) fail("expected '<state>:<probability>'", col);
            const std::string& text = item[0].text;
            const auto colon = text.find(':');
            if (colon == std::string::npos) fail("expected '<state>:<probability>'", col);
            const State s = state({text.substr(0, colon), col});
            Rational p;
            try {
                p = Rational::parse(text.substr(colon + 1));
            } catch (const ParseError& e) {
                fail(e.what(), col + colon + 1);
            }
            if (p.sign() <= 0) fail("probability must be positive", col + colon + 1);
            if (!target.emplace(s, p).second) fail("duplicate target state '" + text.substr(0, colon) + "'", col);
            sum += p;
            i = comma + 1;
        }
        if (sum != Rational(1)) fail("distribution sums to " + sum.str() + ", expected 1", first_column);
        pa_->add_transition(source, *action, Distribution(std::move(target)));
    }

    std::optional<ProbAutomaton> pa_;
    std::size_t line_ = 0;
    bool start_set_ = false;
    bool in_transitions_ = false;
};

/// Splits on `sep`, trimming each piece.
std::vector<std::string_view> split_trim(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = text.find(sep, pos);
        out.push_back(trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

State lookup(const ProbAutomaton& pa, std::string_view name) {
    auto s = pa.find_state(std::string(name));
    if (!s) throw FormatError("unknown state '" + std::string(name) + "'");
    return *s;
}

}  // namespace

ProbAutomaton parse_pa(std::string_view text) { return PaReader().read(text); }

ProbAutomaton load_pa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_pa(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string print_pa(const ProbAutomaton& pa) {
    std::ostringstream os;
    os << "pa " << pa.name() << "\nstates:";
    for (State s = 0; s < pa.num_states(); ++s) os << ' ' << pa.state_name(s);
    os << "\nstart: " << pa.state_name(pa.start()) << "\nexternal:";
    for (Action a = 1; a < pa.num_actions(); ++a) os << ' ' << pa.action_name(a);
    os << "\ntransitions:\n";
    for (const Transition& tr : pa.transitions()) {
        os << "  " << pa.state_name(tr.source) << ' ' << pa.action_name(tr.action) << " ->";
        bool first = true;
        for (const auto& [s, p] : tr.target.entries()) {
            os << (first ? " " : ", ") << pa.state_name(s) << ':' << p;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

Partition parse_partition(std::string_view text, const ProbAutomaton& pa) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw FormatError("partition must be written as {s,t | u}");
    std::vector<std::vector<State>> blocks;
    std::vector<int> seen(pa.num_states(), 0);
    for (std::string_view block : split_trim(text.substr(1, text.size() - 2), '|')) {
        if (block.empty()) throw FormatError("empty block in partition");
        std::vector<State> members;
        for (std::string_view name : split_trim(block, ',')) {
            if (name.empty()) throw FormatError("empty state name in partition");
            const State s = lookup(pa, name);
            ++seen[s];
            members.push_back(s);
        }
        blocks.push_back(std::move(members));
    }
    std::string missing;
    std::string repeated;
    for (State s = 0; s < pa.num_states(); ++s) {
        std::string& list = seen[s] == 0 ? missing : repeated;
        if (seen[s] != 1) list += (list.empty() ? "" : ",") + pa.state_name(s);
    }
    if (!missing.empty()) throw FormatError("partition misses states: " + missing);
    if (!repeated.empty()) throw FormatError("partition repeats states: " + repeated);
    return Partition(std::move(blocks), pa.num_states());
}

std::string print_partition(const Partition& part, const ProbAutomaton& pa) {
    std::string out = "{";
    for (std::size_t b = 0; b < part.size(); ++b) {
        if (b > 0) out += " | ";
        bool first = true;
        for (State s : part.block(b)) {
            if (!first) out += ',';
            out += pa.state_name(s);
            first = false;
        }
    }
    return out + "}";
}

Distribution parse_distribution(std::string_view text, const ProbAutomaton& pa) {
    std::map<State, Rational> entries;
    Rational sum;
    for (std::string_view item : split_trim(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw FormatError("expected '<state>:<probability>', got '" + std::string(item) + "'");
        const State s = lookup(pa, trim(item.substr(0, colon)));
        const Rational p = Rational::parse(trim(item.substr(colon + 1)));
        if (p.sign() <= 0) throw FormatError("probability must be positive");
        if (!entries.emplace(s, p).second) throw FormatError("duplicate state '" + pa.state_name(s) + "'");
        sum += p;
    }
    if (sum != Rational(1)) throw FormatError("distribution sums to " + sum.str() + ", expected 1");
    return Distribution(std::move(entries));
}

}  // namespace wpb
