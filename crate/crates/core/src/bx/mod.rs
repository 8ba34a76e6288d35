//! Bidirectional transformations as pairs of get/set interfaces over one
//! hidden state, with optional initialisation from either side.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::domain::FiniteDomain;
use crate::effect::{Effect, EffectError, Val};
use crate::lawcheck::LawError;
use crate::lens::Lens;
use crate::stateful::{self, Stateful};

mod laws;

pub use laws::{
    analyze_transparency, check_init_laws, check_overwritable, check_seven_laws, check_stability,
    consistent_pairs, init_law_suite, overwrite_suite, seven_law_suite, stability_suite,
    Transparency,
};

/// A set operation: a view value in, a state update out.
pub type Setter<E, S, V> = Arc<dyn Fn(V) -> Stateful<E, S, ()> + Send + Sync>;

/// An initialiser: a view value in, a fresh state out.
pub type Initializer<E, S, V> = Arc<dyn Fn(V) -> <E as Effect>::M<S> + Send + Sync>;

/// Finite domains for checking a bx: hidden states and both view types.
#[derive(Clone, Debug, PartialEq)]
pub struct Space<S, A, B> {
    pub states: FiniteDomain<S>,
    pub left: FiniteDomain<A>,
    pub right: FiniteDomain<B>,
}

impl<S: Val, A: Val, B: Val> Space<S, A, B> {
    pub fn new(states: FiniteDomain<S>, left: FiniteDomain<A>, right: FiniteDomain<B>) -> Self {
        Self {
            states,
            left,
            right,
        }
    }

    pub fn dual(&self) -> Space<S, B, A> {
        Space {
            states: self.states.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// A bidirectional transformation between views `A` and `B` of a state `S`,
/// with effects from `E`.
pub struct Bx<E: Effect, S: Val, A: Val, B: Val> {
    name: String,
    eff: E,
    get_l: Stateful<E, S, A>,
    set_l: Setter<E, S, A>,
    get_r: Stateful<E, S, B>,
    set_r: Setter<E, S, B>,
    space: Option<Arc<Space<S, A, B>>>,
}

impl<E: Effect, S: Val, A: Val, B: Val> Clone for Bx<E, S, A, B> {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            eff: self.eff.clone(),
            get_l: self.get_l.clone(),
            set_l: self.set_l.clone(),
            get_r: self.get_r.clone(),
            set_r: self.set_r.clone(),
            space: self.space.clone(),
        }
    }
}

impl<E: Effect, S: Val, A: Val, B: Val> fmt::Debug for Bx<E, S, A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bx({} over {})", self.name, self.eff.name())
    }
}

impl<E: Effect, S: Val, A: Val, B: Val> Bx<E, S, A, B> {
    pub fn new(
        name: impl Into<String>,
        eff: &E,
        get_l: Stateful<E, S, A>,
        set_l: impl Fn(A) -> Stateful<E, S, ()> + Send + Sync + 'static,
        get_r: Stateful<E, S, B>,
        set_r: impl Fn(B) -> Stateful<E, S, ()> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            eff: eff.clone(),
            get_l,
            set_l: Arc::new(set_l),
            get_r,
            set_r: Arc::new(set_r),
            space: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn effect(&self) -> &E {
        &self.eff
    }

    pub fn get_l(&self) -> Stateful<E, S, A> {
        self.get_l.clone()
    }

    pub fn set_l(&self, a: A) -> Stateful<E, S, ()> {
        (self.set_l)(a)
    }

    pub fn get_r(&self) -> Stateful<E, S, B> {
        self.get_r.clone()
    }

    pub fn set_r(&self, b: B) -> Stateful<E, S, ()> {
        (self.set_r)(b)
    }

    pub fn setter_l(&self) -> Setter<E, S, A> {
        self.set_l.clone()
    }

    pub fn setter_r(&self) -> Setter<E, S, B> {
        self.set_r.clone()
    }

    pub fn with_space(mut self, space: Space<S, A, B>) -> Self {
        self.space = Some(Arc::new(space));
        self
    }

    pub fn space(&self) -> Option<&Space<S, A, B>> {
        self.space.as_deref()
    }

    pub fn require_space(&self) -> Result<&Space<S, A, B>, LawError> {
        self.space()
            .ok_or_else(|| LawError::MissingDomain(self.name.clone()))
    }

    /// Swaps the two sides.
    pub fn dual(&self) -> Bx<E, S, B, A> {
        Bx {
            name: format!("dual({})", self.name),
            eff: self.eff.clone(),
            get_l: self.get_r.clone(),
            set_l: self.set_r.clone(),
            get_r: self.get_l.clone(),
            set_r: self.set_l.clone(),
            space: self.space.as_ref().map(|s| Arc::new(s.dual())),
        }
    }

    /// The left view at `s` when `getL` is a pure query there.
    pub fn read_l(&self, s: &S) -> Result<Option<A>, EffectError> {
        read(&self.eff, &self.get_l, s)
    }

    /// The right view at `s` when `getR` is a pure query there.
    pub fn read_r(&self, s: &S) -> Result<Option<B>, EffectError> {
        read(&self.eff, &self.get_r, s)
    }
}

fn read<E: Effect, S: Val, V: Val>(
    eff: &E,
    get: &Stateful<E, S, V>,
    s: &S,
) -> Result<Option<V>, EffectError> {
    Ok(match eff.as_pure(&get.run(s.clone()))? {
        Some((v, t)) if t == *s => Some(v),
        _ => None,
    })
}

/// A bx that can also build its state from either view alone.
pub struct InitBx<E: Effect, S: Val, A: Val, B: Val> {
    bx: Bx<E, S, A, B>,
    init_l: Initializer<E, S, A>,
    init_r: Initializer<E, S, B>,
}

impl<E: Effect, S: Val, A: Val, B: Val> Clone for InitBx<E, S, A, B> {
    fn clone(&self) -> Self {
        Self {
            bx: self.bx.clone(),
            init_l: self.init_l.clone(),
            init_r: self.init_r.clone(),
        }
    }
}

impl<E: Effect, S: Val, A: Val, B: Val> fmt::Debug for InitBx<E, S, A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InitBx({} over {})", self.bx.name, self.bx.eff.name())
    }
}

impl<E: Effect, S: Val, A: Val, B: Val> Deref for InitBx<E, S, A, B> {
    type Target = Bx<E, S, A, B>;

    fn deref(&self) -> &Self::Target {
        &self.bx
    }
}

impl<E: Effect, S: Val, A: Val, B: Val> InitBx<E, S, A, B> {
    pub fn new(
        bx: Bx<E, S, A, B>,
        init_l: impl Fn(A) -> E::M<S> + Send + Sync + 'static,
        init_r: impl Fn(B) -> E::M<S> + Send + Sync + 'static,
    ) -> Self {
        Self {
            bx,
            init_l: Arc::new(init_l),
            init_r: Arc::new(init_r),
        }
    }

    pub fn bx(&self) -> &Bx<E, S, A, B> {
        &self.bx
    }

    pub fn into_bx(self) -> Bx<E, S, A, B> {
        self.bx
    }

    pub fn init_l(&self, a: A) -> E::M<S> {
        (self.init_l)(a)
    }

    pub fn init_r(&self, b: B) -> E::M<S> {
        (self.init_r)(b)
    }

    pub fn initializer_l(&self) -> Initializer<E, S, A> {
        self.init_l.clone()
    }

    pub fn initializer_r(&self) -> Initializer<E, S, B> {
        self.init_r.clone()
    }

    pub fn with_space(mut self, space: Space<S, A, B>) -> Self {
        self.bx = self.bx.with_space(space);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.bx = self.bx.renamed(name);
        self
    }

    pub fn dual(&self) -> InitBx<E, S, B, A> {
        InitBx {
            bx: self.bx.dual(),
            init_l: self.init_r.clone(),
            init_r: self.init_l.clone(),
        }
    }
}

/// A lens as a bx whose state is the lens source.
pub fn lens_to_bx<E: Effect, A: Val, B: Val>(eff: &E, l: &Lens<A, B>) -> Bx<E, A, A, B> {
    let (e1, e2, l1, l2) = (eff.clone(), eff.clone(), l.clone(), l.clone());
    Bx::new(
        "lens",
        eff,
        stateful::get(eff),
        move |a| stateful::set(&e1, a),
        stateful::gets(eff, move |a: &A| l1.view(a)),
        move |b: B| {
            let (e, l) = (e2.clone(), l2.clone());
            stateful::get::<E, A>(&e2).bind(move |a| stateful::set(&e, l.update(&a, &b)))
        },
    )
}

/// [`lens_to_bx`] with initialisation; requires the lens to have a create.
pub fn lens_to_ibx<E: Effect, A: Val, B: Val>(
    eff: &E,
    l: &Lens<A, B>,
) -> Option<InitBx<E, A, A, B>> {
    if !l.has_create() {
        return None;
    }
    let (e1, e2, l2) = (eff.clone(), eff.clone(), l.clone());
    Some(InitBx::new(
        lens_to_bx(eff, l),
        move |a| e1.pure(a),
        move |b| e2.pure(l2.create(&b).expect("create present")),
    ))
}
