#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "heun.hpp"

namespace miop {

/// c * eta^e * h^h * n^n
struct Term3 {
    int e, h, n;
    long c;
};

/// Sum of the terms at fixed (h, n), as a polynomial in eta.
inline UniPoly eval_terms(const std::vector<Term3>& terms, const Rational& h, const Rational& n) {
    int top = 0;
    for (const auto& t : terms) top = std::max(top, t.e);
    std::vector<Rational> c(static_cast<std::size_t>(top + 1), Rational(0));
    for (const auto& t : terms) c[static_cast<std::size_t>(t.e)] += Rational(t.c) * pow(h, t.h) * pow(n, t.n);
    return UniPoly(std::move(c));
}

// Closed forms of the four appendix families as coefficient tables in (eta, h, n).
// P_n = c0 P + c1 P' with P the undeformed Jacobi polynomial P_n^(g-1/2, h-1/2).
namespace tables {

inline const std::vector<Term3> ia_c0 = {
    {0, 0, 0, 1053}, {0, 0, 1, -162}, {0, 0, 2, -162}, {0, 1, 0, -612}, {0, 1, 1, 108}, {0, 1, 2, 288},
    {0, 2, 0, 96}, {0, 2, 1, 144}, {0, 2, 2, -168}, {0, 3, 0, -248}, {0, 3, 1, -144}, {0, 3, 2, 32}, {0, 4, 0, 176},
    {0, 4, 1, 32}, {0, 5, 0, -32}, {1, 0, 0, 1944}, {1, 0, 1, 486}, {1, 0, 2, 486}, {1, 1, 0, -1026},
    {1, 1, 1, -108}, {1, 1, 2, -648}, {1, 2, 0, -1740}, {1, 2, 1, -432}, {1, 2, 2, 264}, {1, 3, 0, 1976},
    {1, 3, 1, 240}, {1, 3, 2, -32}, {1, 4, 0, -736}, {1, 4, 1, -32}, {1, 5, 0, 96}, {2, 0, 0, 1458},
    {2, 1, 0, -4914}, {2, 1, 1, -216}, {2, 1, 2, -216}, {2, 2, 0, 6132}, {2, 2, 1, -72}, {2, 2, 2, 168},
    {2, 3, 0, -3520}, {2, 3, 1, 144}, {2, 3, 2, -32}, {2, 4, 0, 944}, {2, 4, 1, -32}, {2, 5, 0, -96},
    {3, 0, 0, -1620}, {3, 0, 1, -648}, {3, 0, 2, -648}, {3, 1, 0, 4248}, {3, 1, 2, 720}, {3, 2, 0, -4020},
    {3, 2, 1, 504}, {3, 2, 2, -264}, {3, 3, 0, 1792}, {3, 3, 1, -240}, {3, 3, 2, 32}, {3, 4, 0, -384}, {3, 4, 1, 32},
    {3, 5, 0, 32}};

inline const std::vector<Term3> ia_c1 = {
    {0, 0, 0, 729}, {0, 1, 0, -810}, {0, 2, 0, 108}, {0, 3, 0, 120}, {0, 4, 0, -32}, {1, 1, 0, -1296},
    {1, 2, 0, 1440}, {1, 3, 0, -528}, {1, 4, 0, 64}, {2, 0, 0, -3645}, {2, 1, 0, 4698}, {2, 2, 0, -2016},
    {2, 3, 0, 288}, {3, 1, 0, 1296}, {3, 2, 0, -1440}, {3, 3, 0, 528}, {3, 4, 0, -64}, {4, 0, 0, 2916},
    {4, 1, 0, -3888}, {4, 2, 0, 1908}, {4, 3, 0, -408}, {4, 4, 0, 32}};

inline const std::vector<Term3> iia_c0 = {
    {0, 0, 0, 1458}, {0, 0, 2, -162}, {0, 1, 0, -918}, {0, 1, 1, -144}, {0, 1, 2, 288}, {0, 2, 1, 264},
    {0, 2, 2, -168}, {0, 3, 0, -144}, {0, 3, 1, -160}, {0, 3, 2, 32}, {0, 4, 0, 160}, {0, 4, 1, 32}, {0, 5, 0, -32},
    {1, 0, 0, 2187}, {1, 0, 2, 486}, {1, 1, 0, -2106}, {1, 1, 1, 432}, {1, 1, 2, -648}, {1, 2, 0, -936},
    {1, 2, 1, -600}, {1, 2, 2, 264}, {1, 3, 0, 1776}, {1, 3, 1, 256}, {1, 3, 2, -32}, {1, 4, 0, -720},
    {1, 4, 1, -32}, {1, 5, 0, 96}, {2, 1, 0, -3888}, {2, 1, 2, -216}, {2, 2, 0, 6120}, {2, 2, 1, -192},
    {2, 2, 2, 168}, {2, 3, 0, -3624}, {2, 3, 1, 160}, {2, 3, 2, -32}, {2, 4, 0, 960}, {2, 4, 1, -32}, {2, 5, 0, -96},
    {3, 0, 0, -2916}, {3, 0, 2, -648}, {3, 1, 0, 6048}, {3, 1, 1, -576}, {3, 1, 2, 720}, {3, 2, 0, -4932},
    {3, 2, 1, 672}, {3, 2, 2, -264}, {3, 3, 0, 1992}, {3, 3, 1, -256}, {3, 3, 2, 32}, {3, 4, 0, -400}, {3, 4, 1, 32},
    {3, 5, 0, 32}};

inline const std::vector<Term3> iia_c1 = {
    {0, 0, 0, 729}, {0, 1, 0, -810}, {0, 2, 0, 108}, {0, 3, 0, 120}, {0, 4, 0, -32}, {1, 1, 0, -1296},
    {1, 2, 0, 1440}, {1, 3, 0, -528}, {1, 4, 0, 64}, {2, 0, 0, -3645}, {2, 1, 0, 4698}, {2, 2, 0, -2016},
    {2, 3, 0, 288}, {3, 1, 0, 1296}, {3, 2, 0, -1440}, {3, 3, 0, 528}, {3, 4, 0, -64}, {4, 0, 0, 2916},
    {4, 1, 0, -3888}, {4, 2, 0, 1908}, {4, 3, 0, -408}, {4, 4, 0, 32}};

inline const std::vector<Term3> iiia_c0 = {
    {0, 0, 0, 405}, {0, 0, 1, -486}, {0, 0, 2, -162}, {0, 1, 0, -648}, {0, 1, 1, 1620}, {0, 1, 2, 648},
    {0, 2, 0, 72}, {0, 2, 1, -1728}, {0, 2, 2, -936}, {0, 3, 0, 72}, {0, 3, 1, 432}, {0, 3, 2, 576}, {0, 4, 0, 80},
    {0, 4, 1, 288}, {0, 4, 2, -128}, {0, 5, 0, 32}, {0, 5, 1, -128}, {1, 0, 0, 810}, {1, 0, 1, 486}, {1, 0, 2, 162},
    {1, 1, 0, -1566}, {1, 1, 1, -2268}, {1, 1, 2, -864}, {1, 2, 0, 612}, {1, 2, 1, 3456}, {1, 2, 2, 1656},
    {1, 3, 0, 408}, {1, 3, 1, -1584}, {1, 3, 2, -1344}, {1, 4, 0, -192}, {1, 4, 1, -480}, {1, 4, 2, 384},
    {1, 5, 0, -96}, {1, 5, 1, 384}, {2, 1, 0, 270}, {2, 1, 1, 648}, {2, 1, 2, 216}, {2, 2, 0, 36}, {2, 2, 1, -1944},
    {2, 2, 2, -792}, {2, 3, 0, -528}, {2, 3, 1, 1584}, {2, 3, 2, 960}, {2, 4, 0, 144}, {2, 4, 1, 96},
    {2, 4, 2, -384}, {2, 5, 0, 96}, {2, 5, 1, -384}, {3, 2, 0, 36}, {3, 2, 1, 216}, {3, 2, 2, 72}, {3, 3, 0, 48},
    {3, 3, 1, -432}, {3, 3, 2, -192}, {3, 4, 0, -32}, {3, 4, 1, 96}, {3, 4, 2, 128}, {3, 5, 0, -32}, {3, 5, 1, 128}};

inline const std::vector<Term3> iiia_c1 = {
    {0, 0, 0, -243}, {0, 1, 0, 486}, {0, 2, 0, 108}, {0, 3, 0, -648}, {0, 4, 0, 288}, {1, 2, 0, -432},
    {1, 3, 0, 1008}, {1, 4, 0, -576}, {2, 0, 0, 243}, {2, 1, 0, -486}, {2, 3, 0, 288}, {3, 2, 0, 432},
    {3, 3, 0, -1008}, {3, 4, 0, 576}, {4, 2, 0, -108}, {4, 3, 0, 360}, {4, 4, 0, -288}};

inline const std::vector<Term3> iva_c0 = {
    {0, 0, 0, 133407}, {0, 0, 1, 185640}, {0, 0, 2, 54145}, {0, 1, 0, -291870}, {0, 1, 1, -460616},
    {0, 1, 2, -147238}, {0, 2, 0, 189396}, {0, 2, 1, 440564}, {0, 2, 2, 165212}, {0, 3, 0, 30456},
    {0, 3, 1, -191368}, {0, 3, 2, -98712}, {0, 4, 0, -98352}, {0, 4, 1, 24144}, {0, 4, 2, 33568}, {0, 5, 0, 51552},
    {0, 5, 1, 10336}, {0, 5, 2, -6272}, {0, 6, 0, -12096}, {0, 6, 1, -4352}, {0, 6, 2, 512}, {0, 7, 0, 1152},
    {0, 7, 1, 512}, {1, 0, 0, -194400}, {1, 0, 1, -164976}, {1, 0, 2, -48118}, {1, 1, 0, 574560}, {1, 1, 1, 604208},
    {1, 1, 2, 187684}, {1, 2, 0, -581760}, {1, 2, 1, -830840}, {1, 2, 2, -288488}, {1, 3, 0, 141696},
    {1, 3, 1, 526768}, {1, 3, 2, 227232}, {1, 4, 0, 160128}, {1, 4, 1, -129120}, {1, 4, 2, -97792},
    {1, 5, 0, -137088}, {1, 5, 1, -16384}, {1, 5, 2, 22016}, {1, 6, 0, 41472}, {1, 6, 1, 14336}, {1, 6, 2, -2048},
    {1, 7, 0, -4608}, {1, 7, 1, -2048}, {2, 0, 0, -97686}, {2, 0, 1, -67032}, {2, 0, 2, -19551}, {2, 1, 0, 4860},
    {2, 1, 1, -77448}, {2, 1, 2, -17934}, {2, 2, 0, 300672}, {2, 2, 1, 449940}, {2, 2, 2, 134904},
    {2, 3, 0, -256608}, {2, 3, 1, -490632}, {2, 3, 2, -176112}, {2, 4, 0, -38016}, {2, 4, 1, 194688},
    {2, 4, 2, 102336}, {2, 5, 0, 124416}, {2, 5, 1, -2496}, {2, 5, 2, -28416}, {2, 6, 0, -51840}, {2, 6, 1, -16896},
    {2, 6, 2, 3072}, {2, 7, 0, 6912}, {2, 7, 1, 3072}, {3, 0, 0, 32400}, {3, 0, 1, 49728}, {3, 0, 2, 14504},
    {3, 1, 0, -23760}, {3, 1, 1, -71872}, {3, 1, 2, -24416}, {3, 2, 0, -102240}, {3, 2, 1, -67232},
    {3, 2, 2, -13352}, {3, 3, 0, 147744}, {3, 3, 1, 179392}, {3, 3, 2, 55008}, {3, 4, 0, -33408}, {3, 4, 1, -108960},
    {3, 4, 2, -45568}, {3, 5, 0, -43776}, {3, 5, 1, 12800}, {3, 5, 2, 15872}, {3, 6, 0, 27648}, {3, 6, 1, 8192},
    {3, 6, 2, -2048}, {3, 7, 0, -4608}, {3, 7, 1, -2048}, {4, 0, 0, -3240}, {4, 0, 1, -3360}, {4, 0, 2, -980},
    {4, 1, 0, 4320}, {4, 1, 1, 5728}, {4, 1, 2, 1904}, {4, 2, 0, 9576}, {4, 2, 1, 7568}, {4, 2, 2, 1724},
    {4, 3, 0, -21168}, {4, 3, 1, -24160}, {4, 3, 2, -7416}, {4, 4, 0, 9648}, {4, 4, 1, 19248}, {4, 4, 2, 7456},
    {4, 5, 0, 4896}, {4, 5, 1, -4256}, {4, 5, 2, -3200}, {4, 6, 0, -5184}, {4, 6, 1, -1280}, {4, 6, 2, 512},
    {4, 7, 0, 1152}, {4, 7, 1, 512}};

inline const std::vector<Term3> iva_c1 = {
    {0, 0, 0, -43008}, {0, 0, 1, -58800}, {0, 0, 2, -17150}, {0, 1, 0, 85350}, {0, 1, 1, 133840}, {0, 1, 2, 43120},
    {0, 2, 0, -42792}, {0, 2, 1, -110648}, {0, 2, 2, -43064}, {0, 3, 0, -19920}, {0, 3, 1, 34528}, {0, 3, 2, 21344},
    {0, 4, 0, 27456}, {0, 4, 1, 1952}, {0, 4, 2, -5248}, {0, 5, 0, -9696}, {0, 5, 1, -3328}, {0, 5, 2, 512},
    {0, 6, 0, 1152}, {0, 6, 1, 512}, {1, 0, 0, 100149}, {1, 0, 1, 105840}, {1, 0, 2, 30870}, {1, 1, 0, -219306},
    {1, 1, 1, -269136}, {1, 1, 2, -85848}, {1, 2, 0, 137472}, {1, 2, 1, 252120}, {1, 2, 2, 94920}, {1, 3, 0, 25104},
    {1, 3, 1, -94080}, {1, 3, 2, -52128}, {1, 4, 0, -63600}, {1, 4, 1, 288}, {1, 4, 2, 14208}, {1, 5, 0, 25824},
    {1, 5, 1, 8448}, {1, 5, 2, -1536}, {1, 6, 0, -3456}, {1, 6, 1, -1536}, {2, 0, 0, -168}, {2, 0, 1, 2352},
    {2, 0, 2, 686}, {2, 1, 0, 29370}, {2, 1, 1, 34160}, {2, 1, 2, 9800}, {2, 2, 0, -46968}, {2, 2, 1, -73096},
    {2, 2, 2, -23632}, {2, 3, 0, 10392}, {2, 3, 1, 48320}, {2, 3, 2, 20032}, {2, 4, 0, 19392}, {2, 4, 1, -7232},
    {2, 4, 2, -7424}, {2, 5, 0, -12864}, {2, 5, 1, -3584}, {2, 5, 2, 1024}, {2, 6, 0, 2304}, {2, 6, 1, 1024},
    {3, 0, 0, -92001}, {3, 0, 1, -96432}, {3, 0, 2, -28126}, {3, 1, 0, 194154}, {3, 1, 1, 236432}, {3, 1, 2, 75656},
    {3, 2, 0, -112908}, {3, 2, 1, -209848}, {3, 2, 2, -80080}, {3, 3, 0, -27240}, {3, 3, 1, 70784}, {3, 3, 2, 41536},
    {3, 4, 0, 52896}, {3, 4, 1, 2752}, {3, 4, 2, -10496}, {3, 5, 0, -19392}, {3, 5, 1, -6656}, {3, 5, 2, 1024},
    {3, 6, 0, 2304}, {3, 6, 1, 1024}, {4, 0, 0, 43176}, {4, 0, 1, 56448}, {4, 0, 2, 16464}, {4, 1, 0, -114720},
    {4, 1, 1, -168000}, {4, 1, 2, -52920}, {4, 2, 0, 89760}, {4, 2, 1, 183744}, {4, 2, 2, 66696}, {4, 3, 0, 9528},
    {4, 3, 1, -82848}, {4, 3, 2, -41376}, {4, 4, 0, -46848}, {4, 4, 1, 5280}, {4, 4, 2, 12672}, {4, 5, 0, 22560},
    {4, 5, 1, 6912}, {4, 5, 2, -1536}, {4, 6, 0, -3456}, {4, 6, 1, -1536}, {5, 0, 0, -8148}, {5, 0, 1, -9408},
    {5, 0, 2, -2744}, {5, 1, 0, 25152}, {5, 1, 1, 32704}, {5, 1, 2, 10192}, {5, 2, 0, -24564}, {5, 2, 1, -42272},
    {5, 2, 2, -14840}, {5, 3, 0, 2136}, {5, 3, 1, 23296}, {5, 3, 2, 10592}, {5, 4, 0, 10704}, {5, 4, 1, -3040},
    {5, 4, 2, -3712}, {5, 5, 0, -6432}, {5, 5, 1, -1792}, {5, 5, 2, 512}, {5, 6, 0, 1152}, {5, 6, 1, 512}};

inline const std::vector<Term3> ia_ode_p2 = {
    {0, 0, 0, -27}, {0, 1, 0, 30}, {0, 2, 0, -8}, {1, 0, 0, 54}, {1, 1, 0, -42}, {1, 2, 0, 8}, {2, 0, 0, 27},
    {2, 1, 0, -30}, {2, 2, 0, 8}, {3, 0, 0, -54}, {3, 1, 0, 42}, {3, 2, 0, -8}};

inline const std::vector<Term3> ia_ode_p1 = {
    {0, 0, 0, -135}, {0, 1, 0, 54}, {0, 2, 0, 20}, {0, 3, 0, -8}, {1, 0, 0, -162}, {1, 1, 0, 204}, {1, 2, 0, -96},
    {1, 3, 0, 16}, {2, 0, 0, 216}, {2, 1, 0, -228}, {2, 2, 0, 76}, {2, 3, 0, -8}};

inline const std::vector<Term3> ia_ode_p0 = {
    {0, 0, 0, 324}, {0, 0, 1, -27}, {0, 0, 2, -27}, {0, 1, 0, -378}, {0, 1, 2, 30}, {0, 2, 0, 160}, {0, 2, 1, 24},
    {0, 2, 2, -8}, {0, 3, 0, -24}, {0, 3, 1, -8}, {1, 0, 0, -324}, {1, 0, 1, 54}, {1, 0, 2, 54}, {1, 1, 0, 432},
    {1, 1, 1, 18}, {1, 1, 2, -42}, {1, 2, 0, -180}, {1, 2, 1, -36}, {1, 2, 2, 8}, {1, 3, 0, 24}, {1, 3, 1, 8}};

inline const std::vector<Term3> iia_ode_p2 = {
    {0, 0, 0, -27}, {0, 1, 0, 30}, {0, 2, 0, -8}, {1, 0, 0, 54}, {1, 1, 0, -42}, {1, 2, 0, 8}, {2, 0, 0, 27},
    {2, 1, 0, -30}, {2, 2, 0, 8}, {3, 0, 0, -54}, {3, 1, 0, 42}, {3, 2, 0, -8}};

inline const std::vector<Term3> iia_ode_p1 = {
    {0, 0, 0, -162}, {0, 1, 0, 78}, {0, 2, 0, 16}, {0, 3, 0, -8}, {1, 0, 0, -135}, {1, 1, 0, 198}, {1, 2, 0, -96},
    {1, 3, 0, 16}, {2, 0, 0, 270}, {2, 1, 0, -258}, {2, 2, 0, 80}, {2, 3, 0, -8}};

inline const std::vector<Term3> iia_ode_p0 = {
    {0, 0, 0, 243}, {0, 0, 2, -27}, {0, 1, 0, -342}, {0, 1, 1, -24}, {0, 1, 2, 30}, {0, 2, 0, 156}, {0, 2, 1, 28},
    {0, 2, 2, -8}, {0, 3, 0, -24}, {0, 3, 1, -8}, {1, 0, 0, -486}, {1, 0, 2, 54}, {1, 1, 0, 522}, {1, 1, 1, 48},
    {1, 1, 2, -42}, {1, 2, 0, -192}, {1, 2, 1, -40}, {1, 2, 2, 8}, {1, 3, 0, 24}, {1, 3, 1, 8}};

inline const std::vector<Term3> iiia_ode_p2 = {
    {0, 0, 0, -9}, {0, 1, 0, 18}, {0, 2, 0, -8}, {1, 1, 0, -6}, {1, 2, 0, 8}, {2, 0, 0, 9}, {2, 1, 0, -18},
    {2, 2, 0, 8}, {3, 1, 0, 6}, {3, 2, 0, -8}};

inline const std::vector<Term3> iiia_ode_p1 = {
    {0, 0, 0, 9}, {0, 1, 0, 6}, {0, 2, 0, -12}, {0, 3, 0, -8}, {1, 0, 0, 18}, {1, 1, 0, -12}, {1, 2, 0, -16},
    {1, 3, 0, 16}, {2, 1, 0, -12}, {2, 2, 0, 28}, {2, 3, 0, -8}};

inline const std::vector<Term3> iiia_ode_p0 = {
    {0, 0, 0, -18}, {0, 0, 1, -27}, {0, 0, 2, -9}, {0, 1, 0, 6}, {0, 1, 1, 36}, {0, 1, 2, 18}, {0, 2, 0, 24},
    {0, 2, 2, -8}, {0, 3, 0, -24}, {0, 3, 1, -8}, {1, 1, 1, -18}, {1, 1, 2, -6}, {1, 2, 0, -36}, {1, 2, 1, 12},
    {1, 2, 2, 8}, {1, 3, 0, 24}, {1, 3, 1, 8}};

inline const std::vector<Term3> iva_ode_p2 = {
    {0, 0, 0, -35}, {0, 1, 0, 34}, {0, 2, 0, -8}, {1, 0, 0, 14}, {1, 1, 0, -22}, {1, 2, 0, 8}, {2, 0, 0, 35},
    {2, 1, 0, -34}, {2, 2, 0, 8}, {3, 0, 0, -14}, {3, 1, 0, 22}, {3, 2, 0, -8}};

inline const std::vector<Term3> iva_ode_p1 = {
    {0, 0, 0, -6}, {0, 1, 0, -2}, {0, 2, 0, 16}, {0, 3, 0, -8}, {1, 0, 0, -5}, {1, 1, 0, 62}, {1, 2, 0, -64},
    {1, 3, 0, 16}, {2, 0, 0, 50}, {2, 1, 0, -90}, {2, 2, 0, 48}, {2, 3, 0, -8}};

inline const std::vector<Term3> iva_ode_p0 = {
    {0, 0, 0, -60}, {0, 0, 1, -120}, {0, 0, 2, -35}, {0, 1, 0, -56}, {0, 1, 1, 88}, {0, 1, 2, 34}, {0, 2, 0, 112},
    {0, 2, 1, 4}, {0, 2, 2, -8}, {0, 3, 0, -32}, {0, 3, 1, -8}, {1, 0, 0, -32}, {1, 0, 1, 48}, {1, 0, 2, 14},
    {1, 1, 0, 96}, {1, 1, 1, -64}, {1, 1, 2, -22}, {1, 2, 0, -96}, {1, 2, 1, 8}, {1, 2, 2, 8}, {1, 3, 0, 32},
    {1, 3, 1, 8}};

inline const std::vector<Term3> ia_extra_m2 = {
    {0, 0, 0, 27}, {0, 2, 0, -4}, {1, 0, 0, 54}, {1, 1, 0, -30}, {1, 2, 0, 4}};

inline const std::vector<Term3> iia_extra_m3 = {
    {0, 0, 0, 1}};

inline const std::vector<Term3> iiia_extra_m2 = {
    {0, 0, 0, 3}, {0, 2, 0, -4}, {1, 1, 0, -2}, {1, 2, 0, 4}};

inline const std::vector<Term3> iva_extra_m3 = {
    {0, 0, 0, 2}, {0, 1, 0, -2}, {1, 0, 0, -5}, {1, 1, 0, 2}};

inline const std::vector<Term3> iva_extra_m2 = {
    {0, 0, 0, 107}, {0, 1, 0, -88}, {0, 2, 0, 24}, {0, 3, 0, -32}, {0, 4, 0, 16}, {1, 0, 0, 200}, {1, 1, 0, -280},
    {1, 3, 0, 112}, {1, 4, 0, -32}, {2, 0, 0, 44}, {2, 1, 0, -136}, {2, 2, 0, 156}, {2, 3, 0, -80}, {2, 4, 0, 16}};

inline const std::vector<Term3> pt52_c0 = {
    {0, 0, 0, -1119546}, {0, 0, 1, -75768}, {0, 0, 2, -984}, {1, 0, 0, -1440576}, {1, 0, 1, -101024},
    {1, 0, 2, -1312}, {2, 0, 0, -608850}, {2, 0, 1, -44198}, {2, 0, 2, -574}, {3, 0, 0, -84132}, {3, 0, 1, -6314},
    {3, 0, 2, -82}};

inline const std::vector<Term3> pt52_c1 = {
    {0, 0, 0, -1804}, {1, 0, 0, -1558}, {2, 0, 0, 1476}, {3, 0, 0, 1558}, {4, 0, 0, 328}};

inline const std::vector<Term3> lnew_c0 = {
    {0, 0, 0, 5265}, {1, 0, 0, -5616}, {1, 0, 1, -2592}, {2, 0, 0, 11232}, {2, 0, 1, 5184}, {3, 0, 0, -6912},
    {3, 0, 1, -3072}, {4, 0, 0, 2304}, {4, 0, 1, 1024}};

inline const std::vector<Term3> lnew_c1 = {
    {1, 0, 0, 1620}, {2, 0, 0, -1008}, {2, 0, 1, -576}, {3, 0, 0, 3264}, {3, 0, 1, 1536}, {4, 0, 0, -2304},
    {4, 0, 1, -1024}};

}  // namespace tables

inline bool has_closed_form(const std::string& id) { return id == "Ia" || id == "IIa" || id == "IIIa" || id == "IVa"; }

namespace detail {

struct FamilyTables {
    const std::vector<Term3>*c0, *c1, *p2, *p1, *p0;
};

inline FamilyTables family_tables(const std::string& id) {
    using namespace tables;
    if (id == "Ia") return {&ia_c0, &ia_c1, &ia_ode_p2, &ia_ode_p1, &ia_ode_p0};
    if (id == "IIa") return {&iia_c0, &iia_c1, &iia_ode_p2, &iia_ode_p1, &iia_ode_p0};
    if (id == "IIIa") return {&iiia_c0, &iiia_c1, &iiia_ode_p2, &iiia_ode_p1, &iiia_ode_p0};
    if (id == "IVa") return {&iva_c0, &iva_c1, &iva_ode_p2, &iva_ode_p1, &iva_ode_p0};
    throw std::invalid_argument("no closed form for case '" + id + "'");
}

}  // namespace detail

/// Closed-form P_n of a family at h, with the undeformed g = g(h).
inline UniPoly closed_form_P(const std::string& id, const Rational& h, long n) {
    const auto t = detail::family_tables(id);
    const Rational g = find_case(id).g_at(h);
    const Rational half(1, 2);
    const UniPoly p = jacobi_poly(n, g - half, h - half);
    return eval_terms(*t.c0, h, Rational(n)) * p + eval_terms(*t.c1, h, Rational(n)) * p.derivative();
}

inline PolyODE closed_form_ode(const std::string& id, const Rational& h, long n) {
    const auto t = detail::family_tables(id);
    const Rational nn(n);
    PolyODE ode = make_ode(eval_terms(*t.p2, h, nn), eval_terms(*t.p1, h, nn), eval_terms(*t.p0, h, nn));
    ode.caseId = id;
    ode.n = n;
    ode.h = h;
    return ode;
}

/// Additional modes at negative n, created by the type-III seeds.
inline UniPoly closed_form_extra(const std::string& id, const Rational& h, long n) {
    using namespace tables;
    const std::vector<Term3>* t = nullptr;
    if (id == "Ia" && n == -2) t = &ia_extra_m2;
    if (id == "IIa" && n == -3) t = &iia_extra_m3;
    if (id == "IIIa" && n == -2) t = &iiia_extra_m2;
    if (id == "IVa" && n == -3) t = &iva_extra_m3;
    if (id == "IVa" && n == -2) t = &iva_extra_m2;
    if (!t) throw std::invalid_argument("case '" + id + "' has no additional mode at n = " + std::to_string(n));
    return eval_terms(*t, h, Rational(0));
}

/// The energy of the additional mode n = -(v+1): that of the type-III seed v.
inline Rational extra_mode_energy(long n, const PTParams& p) { return virtual_energy({SeedKind::III, static_cast<int>(-n - 1)}, p); }

/// Norm constant in front of prod_j (E_n - E~_j) h_n(g, h) in the closed-form norms.
inline double norm_prefactor(const std::string& id, double g, double h) {
    if (id == "Ia" || id == "IIa") return std::pow(2.0, g + h - 1) * std::pow(4 * h - 9, 2);
    if (id == "IIIa") return std::pow(2.0, g + h - 1) * std::pow(4 * h - 3, 4);
    if (id == "IVa") return std::pow(2.0, g + h - 3) * std::pow(4 * h - 7, 6);
    throw std::invalid_argument("no closed-form norm for case '" + id + "'");
}

inline double closed_form_norm(const std::string& id, const Rational& h, long n) {
    const auto& cc = find_case(id);
    const PTParams p{cc.g_at(h), h};
    return norm_prefactor(id, p.g.get_d(), h.get_d()) * deformed_norm(build_system(cc.seeds, p), n);
}

// ---- the isolated point (g, h) = (113/2, 41/2) with seeds I1, II2 ----------

inline const PTParams& point_family_params() {
    static const PTParams p{Rational(113, 2), Rational(41, 2)};
    return p;
}

/// c0 P + c1 P' with P = P_n^(56,20).
inline UniPoly point_family_P(long n) {
    const Rational nn(n);
    const UniPoly p = jacobi_poly(n, Rational(56), Rational(20));
    return eval_terms(tables::pt52_c0, Rational(0), nn) * p + eval_terms(tables::pt52_c1, Rational(0), nn) * p.derivative();
}

/// -(1-eta^2)(eta+2)(eta+3) P'' + 2(36eta^3+205eta^2+327eta+116) P'
/// - (2(111eta^2+355eta+146) + k n(n+77)(eta+2)(eta+3)) P = 0,
/// with k = 1; the printed equation has k = 4.
inline PolyODE point_family_ode(long n, bool as_printed = false) {
    const Rational nn(n);
    const UniPoly e23 = linear(2, 1) * linear(3, 1);
    const Rational k = as_printed ? 4 : 1;
    PolyODE ode = make_ode(-from_coeffs({1, 0, -1}) * e23, from_coeffs({116, 327, 205, 36}) * Rational(2),
                           -(from_coeffs({146, 355, 111}) * Rational(2) + e23 * (k * nn * (nn + 77))));
    ode.caseId = "X_I1II2";
    ode.n = n;
    ode.h = point_family_params().h;
    return ode;
}

/// H_n = 2^4 (n(n+77)+1102)(n(n+77)+1242)(n+1)_20 / ((n+57)_20 (2n+77)).
/// The printed form multiplies by (n+57)_20 instead of dividing.
inline double point_family_norm(long n, bool as_printed = false) {
    const Rational s(n * (n + 77));
    Rational v = 16 * (s + 1102) * (s + 1242) * pochhammer(Rational(n + 1), 20) / (2 * n + 77);
    const Rational p57 = pochhammer(Rational(n + 57), 20);
    v = as_printed ? Rational(v * p57) : Rational(v / p57);
    return v.get_d();
}

/// The g = 1 - h equation with its singularity at eta = 0:
/// f'' + ((3/2-h)/(eta-1) + (h+1/2)/(eta+1) - 4/eta) f' + ((-n-2)(n-1)eta + 4h-2)/(eta(eta^2-1)) f = 0.
/// The printed equation has (h-3/2)/(eta+1), which admits no polynomial solution of degree n+2.
inline PolyODE origin_family_ode(const Rational& h, long n, bool as_printed = false) {
    const Rational a = Rational(3, 2) - h;
    const Rational b = as_printed ? Rational(h - Rational(3, 2)) : Rational(h + Rational(1, 2));
    const UniPoly e = eta();
    const UniPoly p1 = e * linear(1, 1) * a + e * linear(-1, 1) * b - from_coeffs({-1, 0, 1}) * Rational(4);
    const UniPoly p0 = linear(4 * h - 2, Rational(-(n + 2) * (n - 1)));
    return make_ode(e * from_coeffs({-1, 0, 1}), p1, p0);
}

// ---- Laguerre limit -----------------------------------------------------------

/// Limit polynomial of Group IV: c0 L + c1 L' with L = L_n^(13/4)(x).
inline UniPoly laguerre_new(long n) {
    const UniPoly l = laguerre_poly(n, Rational(13, 4));
    return eval_terms(tables::lnew_c0, Rational(0), Rational(n)) * l +
           eval_terms(tables::lnew_c1, Rational(0), Rational(n)) * l.derivative();
}

/// Limit equations in x for the scaled P_n.
inline PolyODE limit_ode(Group group, const Rational& gb, long nn, const Rational& gamma = Rational(2)) {
    const Rational n(nn);
    if (group == Group::I || group == Group::II)
        return make_ode(from_coeffs({0, 12, 16}), from_coeffs({-3 - 6 * gb, 34 - 8 * gb, 8}) * Rational(-2),
                        linear(11 - 8 * gb + 3 * n, 4 * (3 + n)) * Rational(4));
    if (group == Group::III || group == Group::IV)
        return make_ode(from_coeffs({0, -12, 16}),
                        from_coeffs({3 + 6 * gb, 22 - 8 * gb, 8}) * Rational(-2),
                        linear(32 - 32 * gb - 6 * gamma - 12 * n, 8 * (4 + gamma + 2 * n)));
    throw std::invalid_argument("no limit equation outside Groups I-IV");
}

/// 4x(4x-3)L'' - (4x+3)(4x+5)L' + 4(4nx+16x-3n-4)L = 0.
inline PolyODE limit_ode_group_iv(long nn) {
    const Rational n(nn);
    return make_ode(from_coeffs({0, -12, 16}), -(linear(3, 4) * linear(5, 4)),
                    linear(-3 * n - 4, 4 * n + 16) * Rational(4));
}

/// gbar(h) as h -> +-infinity along the family curve.
inline Rational gbar_limit(const CatalogCase& cc) {
    if (!cc.g_of_h) throw std::invalid_argument(cc.id + " has no curve");
    const auto& m = *cc.g_of_h;
    if (m.num.degree() > m.den.degree()) throw DomainError("g(h) is unbounded");
    const Rational g = m.num.degree() == m.den.degree() ? Rational(m.num.lc() / m.den.lc()) : Rational(0);
    return g + cc.jshift;
}

}  // namespace miop
