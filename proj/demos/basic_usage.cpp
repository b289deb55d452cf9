// Builds M0(GF(3)) and M(GF(3)) and prints a few facts about them.

#include <paige/paige_loop.hpp>

#include <iostream>

int main() {
    using namespace paige;

    const auto f = parse_field_spec("gf:3");
    const auto a = parse_zorn(f, "[1;1,0,0|0,1,0;1]");
    const auto b = parse_zorn(f, "[0;0,0,1|0,0,2;1]");
    std::cout << "a*b = " << to_string(a * b) << "\n";
    std::cout << "n(a) = " << norm(a).to_string() << ", n(b) = " << norm(b).to_string()
              << ", n(ab) = " << norm(a * b).to_string() << "\n";

    const auto d = build_paige_loop(f);
    std::cout << "|M0| = " << d.m0.size() << ", |M| = " << d.quotient_loop.size() << "\n";

    const auto z = center(d.m0.loop);
    std::cout << "center:";
    for (auto i : z.members()) std::cout << ' ' << to_string(d.m0.element(i));
    std::cout << "\n";

    const auto s = is_simple(d.m0.loop);
    std::cout << "M0 simple: " << (s.simple ? "yes" : "no");
    if (s.witness) std::cout << " (normal subloop of order " << s.witness->size() << ")";
    std::cout << "\n";

    const auto moufang = check_moufang(d.quotient_loop, Sampled{10000, 1});
    std::cout << "M Moufang on 10000 sampled triples: " << (moufang.passed() ? "yes" : "no") << "\n";
}
