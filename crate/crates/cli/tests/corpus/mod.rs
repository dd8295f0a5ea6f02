//! Every group of order at most 24, one per isomorphism type, as permutation
//! groups. Non-obvious ones come from an explicit multiplication rule turned
//! into the left regular representation.

use std::collections::HashMap;
use std::hash::Hash;

use chebotarev::permgroup::GroupFile;
use chebotarev::{FiniteGroup, Permutation};

pub struct Named {
    pub name: String,
    pub group: FiniteGroup,
}

/// Left regular representation of the group generated by `gens` under `mul`.
fn cayley<T: Clone + Eq + Hash>(gens: &[T], mul: impl Fn(&T, &T) -> T) -> FiniteGroup {
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems: Vec<T> = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len());
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|g| Permutation::from_images(elems.iter().map(|x| index[&mul(g, x)]).collect()).unwrap())
        .collect();
    FiniteGroup::generate(elems.len(), &perms).unwrap()
}

fn named(name: &str) -> FiniteGroup {
    GroupFile::named(name).unwrap().build().unwrap()
}

fn cyclic(n: usize) -> FiniteGroup {
    named(&format!("Z{n}"))
}

/// Internal direct product acting on the disjoint union of the point sets.
fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (da, db) = (a.degree(), b.degree());
    let mut gens = Vec::new();
    for &x in a.generators() {
        let mut img: Vec<usize> = a.element(x).images().to_vec();
        img.extend(da..da + db);
        gens.push(Permutation::from_images(img).unwrap());
    }
    for &x in b.generators() {
        let mut img: Vec<usize> = (0..da).collect();
        img.extend(b.element(x).images().iter().map(|p| p + da));
        gens.push(Permutation::from_images(img).unwrap());
    }
    FiniteGroup::generate(da + db, &gens).unwrap()
}

fn abelian(parts: &[usize]) -> FiniteGroup {
    parts[1..].iter().fold(cyclic(parts[0]), |g, &n| product(&g, &cyclic(n)))
}

/// `⟨a, b | a^m, b^n = a^t, b a b⁻¹ = a^r⟩` on pairs `a^i b^j`.
fn metacyclic(m: i64, n: i64, r: i64, t: i64) -> FiniteGroup {
    let rpow = move |j: i64| (0..j).fold(1i64, |acc, _| acc * r % m);
    let mul = move |x: &(i64, i64), y: &(i64, i64)| {
        let carry = if x.1 + y.1 >= n { t } else { 0 };
        ((x.0 + rpow(x.1) * y.0 + carry).rem_euclid(m), (x.1 + y.1) % n)
    };
    cayley(&[(1 % m, 0), (0, 1 % n)], mul)
}

fn sl23() -> FiniteGroup {
    type M = [i64; 4];
    let mul = |a: &M, b: &M| -> M {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    cayley(&[[1, 1, 0, 1], [1, 0, 1, 1]], mul)
}

/// Generalized dihedral group of `Z3 × Z3`.
fn gen_dihedral_3x3() -> FiniteGroup {
    let mul = |a: &(i64, i64, i64), b: &(i64, i64, i64)| {
        let s = if a.2 == 1 { -1 } else { 1 };
        ((a.0 + s * b.0).rem_euclid(3), (a.1 + s * b.1).rem_euclid(3), (a.2 + b.2) % 2)
    };
    cayley(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul)
}

/// `(Z4 × Z2) ⋊ Z2` with `c a c⁻¹ = a b`.
fn z4z2_z2() -> FiniteGroup {
    let mul = |x: &(i64, i64, i64), y: &(i64, i64, i64)| {
        ((x.0 + y.0) % 4, (x.1 + y.1 + x.2 * y.0) % 2, (x.2 + y.2) % 2)
    };
    cayley(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul)
}

/// Central product of `D4 = ⟨a, b⟩` and `Z4 = ⟨c⟩` with `c² = a²`.
fn pauli() -> FiniteGroup {
    let mul = |x: &(i64, i64, i64), y: &(i64, i64, i64)| {
        let s = if x.1 == 1 { -1 } else { 1 };
        let carry = if x.2 + y.2 >= 2 { 2 } else { 0 };
        ((x.0 + s * y.0 + carry).rem_euclid(4), (x.1 + y.1) % 2, (x.2 + y.2) % 2)
    };
    cayley(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul)
}

/// `Z3 ⋊ D4` where the rotation of `D4` inverts `Z3` and the reflection `(1 3)` centralizes it.
fn z3_d4() -> FiniteGroup {
    let d4 = named("D4");
    let r = Permutation::parse(4, "(1 2 3 4)").unwrap();
    let s = Permutation::parse(4, "(1 3)").unwrap();
    let kernel: Vec<Permutation> = ["()", "(1 3)(2 4)", "(1 3)", "(2 4)"]
        .iter()
        .map(|c| Permutation::parse(4, c).unwrap())
        .collect();
    assert!(kernel.iter().all(|k| d4.index_of(k).is_some()));
    let mul = move |x: &(i64, Permutation), y: &(i64, Permutation)| {
        let sign = if kernel.contains(&x.1) { 1 } else { -1 };
        ((x.0 + sign * y.0).rem_euclid(3), x.1.compose(&y.1).unwrap())
    };
    let id = Permutation::identity(4);
    cayley(&[(1, id.clone()), (0, r), (0, s)], mul)
}

pub fn groups_up_to_24() -> Vec<Named> {
    let mut out: Vec<(String, FiniteGroup)> = vec![("1".into(), named("Z1"))];
    for n in 2..=24 {
        out.push((format!("Z{n}"), cyclic(n)));
    }
    for n in 2..=12 {
        out.push((format!("D{n}"), metacyclic(n as i64, 2, n as i64 - 1, 0)));
    }
    let more: Vec<(&str, FiniteGroup)> = vec![
        // order 8
        ("Z4xZ2", abelian(&[4, 2])),
        ("Z2^3", abelian(&[2, 2, 2])),
        ("Q8", metacyclic(4, 2, 3, 2)),
        // order 9
        ("Z3^2", abelian(&[3, 3])),
        // order 12
        ("Z6xZ2", abelian(&[6, 2])),
        ("A4", named("A4")),
        ("Dic3", metacyclic(3, 4, 2, 0)),
        // order 16
        ("Z8xZ2", abelian(&[8, 2])),
        ("Z4xZ4", abelian(&[4, 4])),
        ("Z4xZ2^2", abelian(&[4, 2, 2])),
        ("Z2^4", abelian(&[2, 2, 2, 2])),
        ("Q16", metacyclic(8, 2, 7, 4)),
        ("SD16", metacyclic(8, 2, 3, 0)),
        ("M16", metacyclic(8, 2, 5, 0)),
        ("Z4:Z4", metacyclic(4, 4, 3, 0)),
        ("Z2xD4", product(&cyclic(2), &named("D4"))),
        ("Z2xQ8", product(&cyclic(2), &metacyclic(4, 2, 3, 2))),
        ("(Z4xZ2):Z2", z4z2_z2()),
        ("D4oZ4", pauli()),
        // order 18
        ("Z6xZ3", abelian(&[6, 3])),
        ("S3xZ3", product(&named("S3"), &cyclic(3))),
        ("Z3^2:Z2", gen_dihedral_3x3()),
        // order 20
        ("Z10xZ2", abelian(&[10, 2])),
        ("Dic5", metacyclic(5, 4, 4, 0)),
        ("F20", metacyclic(5, 4, 2, 0)),
        // order 21
        ("Z7:Z3", metacyclic(7, 3, 2, 0)),
        // order 24
        ("Z12xZ2", abelian(&[12, 2])),
        ("Z6xZ2^2", abelian(&[6, 2, 2])),
        ("S4", named("S4")),
        ("SL(2,3)", sl23()),
        ("Z3:Z8", metacyclic(3, 8, 2, 0)),
        ("Dic6", metacyclic(12, 2, 11, 6)),
        ("Z4xS3", product(&cyclic(4), &named("S3"))),
        ("Z2xDic3", product(&cyclic(2), &metacyclic(3, 4, 2, 0))),
        ("Z3:D4", z3_d4()),
        ("Z3xD4", product(&cyclic(3), &named("D4"))),
        ("Z3xQ8", product(&cyclic(3), &metacyclic(4, 2, 3, 2))),
        ("Z2xA4", product(&cyclic(2), &named("A4"))),
        ("Z2^2xS3", product(&abelian(&[2, 2]), &named("S3"))),
    ];
    out.extend(more.into_iter().map(|(n, g)| (n.to_string(), g)));
    out.into_iter().map(|(name, group)| Named { name, group }).collect()
}

/// Isomorphism invariants strong enough to separate the groups above.
pub fn signature(g: &FiniteGroup) -> Vec<usize> {
    let mut orders: Vec<usize> = g.elements().iter().map(Permutation::order).collect();
    orders.sort_unstable();
    let classes = g.conjugacy_classes();
    let mut class_sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    class_sizes.sort_unstable();
    let subs = g.subgroups();
    let normal = subs.iter().filter(|s| s.is_normal_in(g)).count();
    let mut sig = vec![g.order(), subs.len(), normal, classes.len()];
    sig.extend(orders);
    sig.push(usize::MAX);
    sig.extend(class_sizes);
    sig.push(usize::MAX);
    sig.extend(subs.iter().map(|s| s.order()));
    sig
}
