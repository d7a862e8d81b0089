#include <catch2/catch.hpp>

#include <random>

#include "helpers.hpp"
#include "wad/error.hpp"
#include "wad/model_file.hpp"

using namespace wad;
using namespace wadtest;

namespace {

std::string model_path(const std::string& name) { return std::string(WAD_MODELS_DIR) + "/" + name; }

int error_line(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("model files round trip", "[model_file]") {
    for (const char* name : {"two_place.pn", "two_place_safe.pn", "three_state.bp", "three_state.lcs", "ring3.lcs"}) {
        const ModelFile m = load_model(model_path(name));
        const std::string text = print_model(m);
        REQUIRE(parse_model(text) == m);
        REQUIRE(print_model(parse_model(text)) == text);
    }
}

TEST_CASE("LCS alternatives round trip", "[model_file]") {
    const ModelFile m = parse_model(
        "lcs\nstates p q r\nmessages a\nchannels 1\nrule p -> q nop\n"
        "init p p | -\ntarget q,r p | a\ntarget q p,q | -\n");
    const auto& t0 = std::get<LcsConfig>(m.query.targets[0].basis);
    CHECK(t0.alternatives == std::vector<std::vector<std::uint32_t>>{{1, 2}, {0}});
    CHECK(t0.processes == std::vector<std::uint32_t>{1, 0});
    CHECK(parse_model(print_model(m)) == m);
    const auto& init = std::get<LcsConfig>(m.query.init);
    CHECK(init.alternatives.empty());
    const ModelFile single = parse_model("lcs\nstates p q\nmessages a\nchannels 1\ninit p | -\ntarget q | -\n");
    CHECK(std::get<LcsConfig>(single.query.targets[0].basis).alternatives.empty());
}

TEST_CASE("model file errors", "[model_file]") {
    CHECK(error_line("") == 1);
    CHECK(error_line("petri\nplaces p\ninit p 1\ntarget p 2\nbogus\n") == 5);
    CHECK(error_line("petri\nplaces p\ntransition t\n  consume z 1\ninit p 1\ntarget p 1\n") == 4);
    CHECK(error_line("petri\nplaces p\ninit p 1\n") > 0);
    CHECK(error_line("lcs\nstates p\nmessages a\nchannels 1\ninit p,p | -\ntarget p | -\n") == 5);
    CHECK(error_line("lcs\nstates p\nmessages a\nchannels 1\ninit p | b\ntarget p | -\n") == 5);
    CHECK(error_line("broadcast\nstates p q\ninit p\ntarget expr [p]* r\n") == 4);
    CHECK(error_line("lcs\nstates p X\nmessages a\nchannels 1\ninit p | -\ntarget p | -\n") > 0);
    CHECK_THROWS_AS(load_model(model_path("missing.pn")), InputError);
}

TEST_CASE("random nets round trip", "[model_file][property]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        PetriNet net;
        const std::size_t places = 1 + rng() % 4;
        for (std::size_t p = 0; p < places; ++p) {
            net.places.push_back("p" + std::to_string(p));
        }
        for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
            PetriTransition t{"t" + std::to_string(k), {}, {}};
            for (std::size_t p = 0; p < places; ++p) {
                t.consume.push_back(static_cast<std::uint32_t>(rng() % 3));
                t.produce.push_back(static_cast<std::uint32_t>(rng() % 3));
            }
            net.transitions.push_back(std::move(t));
        }
        Marking init, target;
        for (std::size_t p = 0; p < places; ++p) {
            init.push_back(static_cast<std::uint32_t>(rng() % 4));
            target.push_back(static_cast<std::uint32_t>(rng() % 4));
        }
        ModelFile m{net, {init, {}}};
        m.query.targets.push_back({std::nullopt, target});
        REQUIRE(parse_model(print_model(m)) == m);
    }
}
