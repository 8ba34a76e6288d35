use std::sync::Arc;

use crate::bx::{Bx, Space};
use crate::compose::transparency;
use crate::effect::{Reader, Val};
use crate::stateful::{self, Stateful};

use super::ExampleError;

struct Family<C: Val, S: Val, A: Val, B: Val> {
    reader: Reader<C>,
    members: Vec<(C, Bx<Reader<C>, S, A, B>)>,
}

impl<C: Val, S: Val, A: Val, B: Val> Family<C, S, A, B> {
    fn pick(&self, c: &C) -> &Bx<Reader<C>, S, A, B> {
        self.members
            .iter()
            .find(|(k, _)| k == c)
            .map(|(_, bx)| bx)
            .unwrap_or_else(|| panic!("environment {c:?} outside the declared environments"))
    }

    fn switch<T: Val>(
        self: &Arc<Self>,
        op: impl Fn(&Bx<Reader<C>, S, A, B>) -> Stateful<Reader<C>, S, T> + Send + Sync + 'static,
    ) -> Stateful<Reader<C>, S, T> {
        let fam = self.clone();
        stateful::lift::<Reader<C>, S, C>(&self.reader, self.reader.ask())
            .bind(move |c| op(fam.pick(&c)))
    }
}

/// Chooses, on every operation, the member of a family of transparent bx
/// selected by the environment.
pub fn switch_bx<C: Val, S: Val, A: Val, B: Val>(
    reader: &Reader<C>,
    f: impl Fn(&C) -> Bx<Reader<C>, S, A, B>,
    space: Space<S, A, B>,
) -> Result<Bx<Reader<C>, S, A, B>, ExampleError> {
    let mut members = Vec::new();
    for c in reader.envs() {
        let mut bx = f(c);
        if bx.space().is_none() {
            bx = bx.with_space(space.clone());
        }
        transparency(&bx)?;
        members.push((c.clone(), bx));
    }
    let fam = Arc::new(Family {
        reader: reader.clone(),
        members,
    });
    let (f1, f2) = (fam.clone(), fam.clone());
    Ok(Bx::new(
        "switch",
        reader,
        fam.switch(|bx| bx.get_l()),
        move |a: A| f1.switch(move |bx| bx.set_l(a.clone())),
        fam.switch(|bx| bx.get_r()),
        move |b: B| f2.switch(move |bx| bx.set_r(b.clone())),
    )
    .with_space(space))
}
