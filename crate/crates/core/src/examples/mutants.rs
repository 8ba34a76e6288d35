//! Deliberately broken bx, lenses and symmetric lenses, each failing a known
//! law, used to show that the checker catches what it should.

use crate::bx::{Bx, InitBx, Space};
use crate::compose::identity_bx;
use crate::domain::FiniteDomain;
use crate::effect::{Identity, NativeState};
use crate::lens::Lens;
use crate::stateful::{self, Stateful};
use crate::symlens::SymLens;

use super::composers::{composers_symlens, ComposerSet, NameDates, NameNation};

/// The state of the seven-law mutants: a view value and a hidden counter.
pub type Tagged = (i32, u8);

/// The laws for which [`law_mutant`] has a witness.
pub const SEVEN_LAWS: [&str; 7] = [
    "G_LG_L", "S_LG_L", "G_LS_L", "G_RG_R", "S_RG_R", "G_RS_R", "G_LG_R",
];

fn views() -> FiniteDomain<i32> {
    FiniteDomain::dedup([0, 1])
}

fn space(counters: &[u8]) -> Space<Tagged, i32, i32> {
    let states = views().product(&FiniteDomain::dedup(counters.iter().copied()));
    Space::new(states, views(), views())
}

fn plain_right(
    name: &str,
    get_l: Stateful<Identity, Tagged, i32>,
    set_l: impl Fn(i32) -> Stateful<Identity, Tagged, ()> + Send + Sync + 'static,
    counters: &[u8],
) -> Bx<Identity, Tagged, i32, i32> {
    Bx::new(
        name,
        &Identity,
        get_l,
        set_l,
        stateful::gets(&Identity, |s: &Tagged| s.0),
        |b| stateful::modify(&Identity, move |(_, c)| (b, c)),
    )
    .with_space(space(counters))
}

/// A bx that fails exactly the named law of the seven on its declared space,
/// built from a view and a hidden counter over the identity effect.
pub fn law_mutant(law: &str) -> Option<Bx<Identity, Tagged, i32, i32>> {
    let name = format!("breaks {law}");
    let bx = match law {
        "G_LG_L" => {
            let get = Stateful::new(&Identity, |(a, c): Tagged| {
                let c2 = match c {
                    0 => 1,
                    1 | 2 => 2,
                    other => other,
                };
                (a, (a, c2))
            });
            plain_right(
                &name,
                get,
                |a| stateful::modify(&Identity, move |(_, c)| (a, if c == 1 { 0 } else { 3 })),
                &[0],
            )
        }
        "S_LG_L" => plain_right(
            &name,
            stateful::gets(&Identity, |s: &Tagged| s.0),
            |_| stateful::pure(&Identity, ()),
            &[0],
        ),
        "G_LS_L" => plain_right(
            &name,
            stateful::gets(&Identity, |s: &Tagged| s.0),
            |a| stateful::modify(&Identity, move |(_, r)| (a, (r + 1) % 2)),
            &[0, 1],
        ),
        "G_RG_R" | "S_RG_R" | "G_RS_R" => {
            let left = law.replace('R', "L");
            return law_mutant(&left).map(|bx| bx.dual().renamed(name));
        }
        "G_LG_R" => {
            let flip = |from: u8, to: u8| {
                move |c: u8| {
                    if c == from {
                        to
                    } else if c == to {
                        from
                    } else {
                        c
                    }
                }
            };
            let (fl, fr) = (flip(0, 1), flip(0, 2));
            Bx::new(
                name,
                &Identity,
                Stateful::new(&Identity, |(a, _): Tagged| (a, (a, 1))),
                move |a| stateful::modify(&Identity, move |(_, c)| (a, fl(c))),
                Stateful::new(&Identity, |(a, _): Tagged| (a, (a, 2))),
                move |b| stateful::modify(&Identity, move |(_, c)| (b, fr(c))),
            )
            .with_space(space(&[0]))
        }
        _ => return None,
    };
    Some(bx)
}

/// Well-behaved, but setting the right side to a new value resets the left
/// side to `0`, so a consistent pair set left-then-right does not read back.
pub fn unstable_bx() -> Bx<Identity, (i32, i32), i32, i32> {
    let d = views();
    Bx::new(
        "unstable",
        &Identity,
        stateful::gets(&Identity, |s: &(i32, i32)| s.0),
        |a| stateful::modify(&Identity, move |(_, b)| (a, b)),
        stateful::gets(&Identity, |s: &(i32, i32)| s.1),
        |b2| {
            stateful::modify(
                &Identity,
                move |(a, b)| if b == b2 { (a, b) } else { (0, b2) },
            )
        },
    )
    .with_space(Space::new(d.product(&d), d.clone(), d))
}

/// An identity bx whose left initialiser ignores its argument.
pub fn forgetful_init_ibx() -> InitBx<Identity, i32, i32, i32> {
    InitBx::new(identity_bx(&Identity, &views()), |_| 0, |b| b).renamed("forgetful init")
}

/// Counts view changes modulo 3: satisfies (UV) and (VU) but not (UU).
pub fn counting_lens() -> Lens<(i32, u8), i32> {
    Lens::new(
        |s: &(i32, u8)| s.0,
        |&(v, c), &v2| if v == v2 { (v, c) } else { (v2, (c + 1) % 3) },
    )
}

/// Resets the hidden half on every update, even an unchanged one, so (VU)
/// fails.
pub fn resetting_lens() -> Lens<(i32, i32), i32> {
    Lens::new(|s: &(i32, i32)| s.0, |_, &v| (v, 0))
}

/// The composers lens with a complement that never changes, so dates edited
/// on the left are lost on the way back.
pub fn stale_composers_symlens() -> SymLens<NameDates, ComposerSet, Vec<NameNation>> {
    let good = composers_symlens();
    let g2 = good.clone();
    SymLens::new(
        move |m, c| (good.putr(m, c).0, c.clone()),
        move |n, c| g2.putl(n, c),
        Vec::new(),
    )
}

/// Native state shared by [`xor_components`]: two bits `p` and `q`.
pub type Bits = (bool, bool);

/// Two transparent, well-behaved, overwritable bx over a shared native
/// state whose pairing is not overwritable. The first toggles `p` by how
/// much its view changes; the second toggles `q` by that change masked with
/// `p`. A discarded first set of the pair leaves its trace in `q`.
pub fn xor_components() -> (
    Bx<NativeState<Bits>, bool, bool, bool>,
    Bx<NativeState<Bits>, bool, bool, bool>,
) {
    let bits = [false, true];
    let native = NativeState::new(
        bits.iter()
            .flat_map(|&p| bits.iter().map(move |&q| (p, q)))
            .collect(),
    );
    let d = FiniteDomain::dedup(bits);
    let sp = Space::new(d.clone(), d.clone(), d);

    fn toggling(
        name: &str,
        native: &NativeState<Bits>,
        toggle: fn(Bits, bool) -> Bits,
        sp: Space<bool, bool, bool>,
    ) -> Bx<NativeState<Bits>, bool, bool, bool> {
        let (n1, n2) = (native.clone(), native.clone());
        let set = move |n: NativeState<Bits>| {
            move |v: bool| {
                let n = n.clone();
                stateful::get::<NativeState<Bits>, bool>(&n.clone()).bind(move |old| {
                    let changed = old != v;
                    stateful::set(&n, v).then(&stateful::lift(
                        &n,
                        n.modify_t(move |bits| toggle(bits, changed)),
                    ))
                })
            }
        };
        Bx::new(
            name,
            native,
            stateful::get(native),
            set(n1),
            stateful::get(native),
            set(n2),
        )
        .with_space(sp)
    }

    (
        toggling("toggle p", &native, |(p, q), d| (p ^ d, q), sp.clone()),
        toggling("toggle q by p", &native, |(p, q), d| (p, q ^ (p && d)), sp),
    )
}
