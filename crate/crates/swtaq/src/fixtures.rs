// SPDX-License-Identifier: Apache-2.0
//! Small reference models used by tests, the acceptance suite and the CLI
//! `bench` command.

use crate::swta::Swta;
use crate::text::{parse_swta, parse_wtt};
use crate::wtt::Wtt;

/// Five-state SWTA over one symbol and two colors.
pub const A_EX: &str = "\
swta m=4
root q
leaves u v
colors 1 2
trans q a 1 -> (1*r + 1*s | 1*r + -1*s)
trans q a 2 -> (1*r + -1*s | 1*r + 1*s)
trans r a 1 -> (2*u | 0*u)
trans r a 2 -> (0*u | 1/s2^2*u)
trans s a 1 -> (1*u + 1*v | 0*v)
trans s a 2 -> (1*u + -1*v | 1*u + -3/s2^2*v)
";

/// Different tree function from `A_EX` on the same length-2 words. The leaf
/// state `h` also has transitions, so longer words are accepted too.
pub const B_EX: &str = "\
swta m=4
root f
leaves h
colors 1 2
trans f a 1 -> (4*g | 0*h)
trans f a 2 -> (0*h | k)
trans g a 1 -> (0*h | 1/s2^4*h)
trans g a 2 -> (h | 0*h)
trans k a 1 -> (4*h | 0*h)
trans k a 2 -> (0*h | h)
trans h a 1 -> (h | h)
trans h a 2 -> (h | h)
";

/// `B_EX` with the zero terms at the root moved off `h` and without the
/// transitions of `h`: same values, defined exactly on length-2 words, so
/// its language coincides with that of `A_EX`.
pub const B_EX_LEN2: &str = "\
swta m=4
root f
leaves h
colors 1 2
trans f a 1 -> (4*g | 0*g)
trans f a 2 -> (0*k | k)
trans g a 1 -> (0*h | 1/s2^4*h)
trans g a 2 -> (h | 0*h)
trans k a 1 -> (4*h | 0*h)
trans k a 2 -> (0*h | h)
";

pub const T_EX: &str = "\
wtt m=4
root p
leaves p
trans p a -> (1/s2^1*z(L) + 1/s2^1*z(R) | 1/s2^1*z(L) + -1/s2^1*z(R))
trans z a -> (p(L) | -p(R))
";

/// All computational basis states, any number of qubits.
pub const A_BASES: &str = "\
swta m=4
root q
leaves q
colors 1 2
trans q a 1 -> (q | 0*q)
trans q a 2 -> (0*q | q)
";

/// H on every qubit.
pub const T_HALL: &str = "\
wtt m=4
root s
leaves s
trans s a -> (1/s2^1*s(L) + 1/s2^1*s(R) | 1/s2^1*s(L) + -1/s2^1*s(R))
";

/// RX(pi/2) on every other qubit; only even heights are accepted.
pub const T_RX_EVEN: &str = "\
wtt m=4
root u
leaves u
trans u a -> (1/s2^1*v(L) + (0,0,-1,0)/s2^1*v(R) | (0,0,-1,0)/s2^1*v(L) + 1/s2^1*v(R))
trans v a -> (u(L) | u(R))
";

pub const BV_PRE: &str = "\
swta m=4
root s1
leaves s2
colors 1
trans s1 w 1 -> (s1 | 0*s1)
trans s1 a 1 -> (0*s2 | s2)
";

/// Secret (10)*(1 + eps) in the working qubits, ancilla 1.
pub const BV_POST: &str = "\
swta m=4
root g
leaves c
colors 1
trans g w 1 -> (0*h | h)
trans g a 1 -> (0*c | c)
trans h w 1 -> (g | 0*g)
trans h a 1 -> (0*c | c)
";

/// Post-condition with the secret flipped to (01)*; BV must fail against it.
pub const BV_POST_FLIPPED: &str = "\
swta m=4
root g
leaves c
colors 1
trans g w 1 -> (h | 0*h)
trans g a 1 -> (0*c | c)
trans h w 1 -> (0*g | g)
trans h a 1 -> (0*c | c)
";

pub const BV_H: &str = "\
wtt m=4
root u
leaves u
trans u w -> (1/s2^1*u(L) + 1/s2^1*u(R) | 1/s2^1*u(L) + -1/s2^1*u(R))
trans u a -> (1/s2^1*u(L) + 1/s2^1*u(R) | 1/s2^1*u(L) + -1/s2^1*u(R))
";

/// The BV oracle: CX from every odd working qubit onto the ancilla.
pub const BV_CX: &str = "\
wtt m=4
root r0
leaves l
trans r0 w -> (s0(L) | s1(R))
trans s0 w -> (r0(L) | r0(R))
trans s1 w -> (r1(L) | r1(R))
trans r1 w -> (s1(L) | s0(R))
trans r0 a -> (l(L) | l(R))
trans s0 a -> (l(L) | l(R))
trans s1 a -> (l(R) | l(L))
trans r1 a -> (l(R) | l(L))
";

/// H(CX(H(pre))) as listed by hand, zero terms included.
pub const BV_RES: &str = "\
swta m=4
root gu
leaves su
colors 1
trans gu w 1 -> (1/s2^2*du + 1/s2^2*eu | 1/s2^2*du + -1/s2^2*eu)
trans gu a 1 -> (0*su | su)
trans du w 1 -> (gu | 0*gu)
trans du a 1 -> (0*su | su)
trans eu w 1 -> (mu | 0*mu)
trans eu a 1 -> (0*su | -su)
trans mu w 1 -> (1/s2^2*eu + 1/s2^2*du | 1/s2^2*eu + -1/s2^2*du)
trans mu a 1 -> (0*su | -su)
";

fn swta(text: &str) -> Swta {
    parse_swta(text).expect("bundled model parses")
}

fn wtt(text: &str) -> Wtt {
    parse_wtt(text).expect("bundled model parses")
}

pub fn a_ex() -> Swta {
    swta(A_EX)
}

pub fn b_ex() -> Swta {
    swta(B_EX)
}

pub fn b_ex_len2() -> Swta {
    swta(B_EX_LEN2)
}

pub fn t_ex() -> Wtt {
    wtt(T_EX)
}

pub fn a_bases() -> Swta {
    swta(A_BASES)
}

pub fn t_hall() -> Wtt {
    wtt(T_HALL)
}

pub fn t_rx_even() -> Wtt {
    wtt(T_RX_EVEN)
}

pub fn bv_pre() -> Swta {
    swta(BV_PRE)
}

pub fn bv_post() -> Swta {
    swta(BV_POST)
}

pub fn bv_post_flipped() -> Swta {
    swta(BV_POST_FLIPPED)
}

pub fn bv_h() -> Wtt {
    wtt(BV_H)
}

pub fn bv_cx() -> Wtt {
    wtt(BV_CX)
}

pub fn bv_res() -> Swta {
    swta(BV_RES)
}
