#include "wad/transducer.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "wad/error.hpp"

namespace wad {

namespace {

std::uint64_t next_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

TransducerNfa::TransducerNfa(Alphabet base) : base_(std::move(base)) {
    add_state(false);
}

void TransducerNfa::touch() { uid_ = next_uid(); }

StateId TransducerNfa::add_state(bool accepting) {
    accepting_.push_back(accepting ? 1 : 0);
    moves_.resize(accepting_.size() * base_.size());
    touch();
    return static_cast<StateId>(accepting_.size() - 1);
}

void TransducerNfa::set_initial(StateId p) {
    if (p >= state_count()) {
        throw InputError("initial state " + std::to_string(p) + " does not exist");
    }
    initial_ = p;
    touch();
}

void TransducerNfa::set_accepting(StateId p, bool accepting) {
    accepting_.at(p) = accepting ? 1 : 0;
    touch();
}

void TransducerNfa::add_transition(StateId from, Letter in, Letter out, StateId to) {
    if (from >= state_count() || to >= state_count()) {
        throw InputError("transition references a missing state");
    }
    if (in >= base_.size() || out >= base_.size()) {
        throw InputError("transition label outside the pair alphabet");
    }
    auto& bucket = moves_[from * base_.size() + in];
    Move mv{out, to};
    if (std::find(bucket.begin(), bucket.end(), mv) == bucket.end()) {
        bucket.push_back(mv);
        touch();
    }
}

void TransducerNfa::add_transition(StateId from, std::string_view in, std::string_view out, StateId to) {
    add_transition(from, base_.index(in), base_.index(out), to);
}

std::vector<TransducerNfa::Transition> TransducerNfa::transitions() const {
    std::vector<Transition> out;
    const std::size_t m = base_.size();
    for (StateId p = 0; p < state_count(); ++p) {
        for (Letter a = 0; a < m; ++a) {
            for (const Move& mv : moves_[p * m + a]) {
                out.push_back({p, a, mv.out, mv.to});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool TransducerNfa::accepts(const Word& input, const Word& output) const {
    if (input.size() != output.size()) {
        return false;
    }
    std::vector<char> current(state_count(), 0);
    current[initial_] = 1;
    for (std::size_t i = 0; i < input.size(); ++i) {
        std::vector<char> next(state_count(), 0);
        bool any = false;
        for (StateId p = 0; p < state_count(); ++p) {
            if (!current[p]) {
                continue;
            }
            for (const Move& mv : moves(p, input[i])) {
                if (mv.out == output[i]) {
                    next[mv.to] = 1;
                    any = true;
                }
            }
        }
        if (!any) {
            return false;
        }
        current = std::move(next);
    }
    for (StateId p = 0; p < state_count(); ++p) {
        if (current[p] && accepting_[p]) {
            return true;
        }
    }
    return false;
}

std::string TransducerNfa::dump() const {
    std::ostringstream out;
    out << "states " << state_count() << " initial " << initial_ << " accepting";
    for (StateId p = 0; p < state_count(); ++p) {
        if (accepting_[p]) {
            out << ' ' << p;
        }
    }
    out << '\n';
    for (const auto& t : transitions()) {
        out << t.from << " -(" << base_.token(t.in) << ',' << base_.token(t.out) << ")-> " << t.to << '\n';
    }
    return out.str();
}

TransducerNfa transpose_transducer(const TransducerNfa& t) {
    TransducerNfa r(t.base_alphabet());
    for (StateId p = 1; p < t.state_count(); ++p) {
        r.add_state();
    }
    for (StateId p = 0; p < t.state_count(); ++p) {
        r.set_accepting(p, t.is_accepting(p));
    }
    r.set_initial(t.initial());
    for (const auto& tr : t.transitions()) {
        r.add_transition(tr.from, tr.out, tr.in, tr.to);
    }
    return r;
}

TransducerNfa identity_transducer(const Alphabet& base) {
    TransducerNfa t(base);
    t.set_accepting(0);
    for (Letter a = 0; a < base.size(); ++a) {
        t.add_transition(0, a, a, 0);
    }
    return t;
}

TransducerNfa union_transducers(std::span<const TransducerNfa> parts) {
    if (parts.empty()) {
        throw InputError("union of zero transducers");
    }
    if (parts.size() == 1) {
        return parts.front();
    }
    TransducerNfa r(parts.front().base_alphabet());
    const StateId start = r.initial();
    for (const auto& part : parts) {
        if (!(part.base_alphabet() == r.base_alphabet())) {
            throw AlphabetMismatch("union of transducers over different alphabets");
        }
        const StateId offset = static_cast<StateId>(r.state_count());
        for (StateId p = 0; p < part.state_count(); ++p) {
            r.add_state(part.is_accepting(p));
        }
        if (part.is_accepting(part.initial())) {
            r.set_accepting(start);
        }
        for (const auto& tr : part.transitions()) {
            r.add_transition(offset + tr.from, tr.in, tr.out, offset + tr.to);
            if (tr.from == part.initial()) {
                r.add_transition(start, tr.in, tr.out, offset + tr.to);
            }
        }
    }
    return r;
}

}  // namespace wad
