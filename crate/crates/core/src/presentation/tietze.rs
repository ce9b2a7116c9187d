//! Tietze elimination of redundant generators.

use super::{Presentation, PresentationError, Relator, Word};

/// Removes generators that occur exactly once in some relator: from such a
/// relator `u x^ε v` we get `x = (v u)^{-ε}` up to cyclic rotation, and `x`
/// is substituted everywhere. Among candidates the shortest relator wins
/// (ties: earliest relator, then earliest generator), which keeps the result
/// deterministic. Only generators listed in `allowed` are eliminated.
pub fn eliminate_generators<S: AsRef<str>>(
    p: &Presentation,
    allowed: &[S],
) -> Result<Presentation, PresentationError> {
    let mut gens: Vec<String> = p.generators().to_vec();
    let mut rels: Vec<Relator> = p.relators().to_vec();
    loop {
        let mut best: Option<(usize, usize, String)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let w = r.word.cyclic_reduce();
            for g in gens.iter().filter(|g| allowed.iter().any(|a| a.as_ref() == g.as_str())) {
                let hits = w.letters().iter().filter(|l| &l.gen == g).count();
                if hits == 1 && best.as_ref().map_or(true, |b| w.len() < b.0) {
                    best = Some((w.len(), ri, g.clone()));
                }
            }
        }
        let Some((_, ri, x)) = best else { break };
        let w = rels.remove(ri).word.cyclic_reduce();
        let pos = w.letters().iter().position(|l| l.gen == x).expect("occurs once");
        let exp = w.letters()[pos].exp;
        // u x^ε v = 1  ⇒  x^ε = u⁻¹ v⁻¹ = (v u)⁻¹
        let u = Word::from_letters(w.letters()[..pos].to_vec());
        let v = Word::from_letters(w.letters()[pos + 1..].to_vec());
        let mut value = v.concat_raw(&u).inverse_raw();
        if exp < 0 {
            value = value.inverse_raw();
        }
        let value = value.free_reduce();
        gens.retain(|g| g != &x);
        let subst = |name: &str| (name == x).then(|| value.clone());
        rels = rels
            .into_iter()
            .map(|r| Relator { tag: r.tag, word: r.word.substitute(&subst) })
            .collect();
    }
    let mut out = Presentation::new(p.name().to_string(), p.genus(), gens)?;
    for r in rels {
        out.add_relator(r.tag, r.word.cyclic_reduce())?;
    }
    Ok(out)
}
