//! Finite groups given by Cayley tables, their conjugacy classes, and
//! validated character tables.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A finite group as a multiplication table on `0..order`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    element_orders: Vec<u32>,
    exponent: u32,
}

impl FiniteGroup {
    /// Checks the group axioms. Associativity is tested exhaustively up to
    /// order 48 and on a deterministic sample of triples above that.
    pub fn new(name: impl Into<String>, cayley: Vec<Vec<usize>>) -> Result<Self> {
        let m = cayley.len();
        if m == 0 {
            return Err(Error::NotAGroup("empty Cayley table".into()));
        }
        if let Some(r) = cayley.iter().position(|row| row.len() != m) {
            return Err(Error::NotAGroup(format!("row {r} does not have {m} entries")));
        }
        if cayley.iter().flatten().any(|&x| x >= m) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        let identities: Vec<usize> = (0..m)
            .filter(|&e| (0..m).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .collect();
        let identity = match identities.as_slice() {
            [e] => *e,
            [] => return Err(Error::NotAGroup("no identity element".into())),
            _ => return Err(Error::NotAGroup("identity is not unique".into())),
        };
        let mut inverse = vec![0; m];
        for g in 0..m {
            inverse[g] = (0..m)
                .find(|&h| cayley[g][h] == identity && cayley[h][g] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))?;
        }
        let associative = |a: usize, b: usize, c: usize| cayley[cayley[a][b]][c] == cayley[a][cayley[b][c]];
        if m <= 48 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if !associative(a, b, c) {
                            return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % m as u64) as usize
            };
            for _ in 0..200_000 {
                let (a, b, c) = (next(), next(), next());
                if !associative(a, b, c) {
                    return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        let element_orders: Vec<u32> = (0..m)
            .map(|g| {
                let mut x = g;
                let mut k = 1;
                while x != identity {
                    x = cayley[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = element_orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        Ok(FiniteGroup {
            name: name.into(),
            cayley,
            identity,
            inverse,
            element_orders,
            exponent,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn element_order(&self, g: usize) -> u32 {
        self.element_orders[g]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.cayley[a][b] == self.cayley[b][a]))
    }

    /// Direct product; element `(g, h)` has index `g * |H| + h`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (self.order(), other.order());
        let cayley = (0..m * k)
            .map(|x| {
                (0..m * k)
                    .map(|y| self.mul(x / k, y / k) * k + other.mul(x % k, y % k))
                    .collect()
            })
            .collect();
        FiniteGroup::new(format!("{}x{}", self.name, other.name), cayley).expect("direct product of groups is a group")
    }
}

/// Conjugacy classes, identity class first and the rest ordered by their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }

    /// Class containing the inverses of `class`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }
}

/// Partitions the elements of `group` into conjugacy classes.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyClasses {
    let m = group.order();
    let mut class_of = vec![usize::MAX; m];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let order = std::iter::once(group.identity()).chain((0..m).filter(|&g| g != group.identity()));
    for g in order {
        if class_of[g] != usize::MAX {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..m).map(|x| group.mul(group.mul(x, g), group.inv(x))).collect();
        let id = members.len();
        for &h in &orbit {
            class_of[h] = id;
        }
        members.push(orbit.into_iter().collect());
    }
    let inverse_class = members.iter().map(|c| class_of[group.inv(c[0])]).collect();
    ConjugacyClasses {
        class_of,
        members,
        inverse_class,
    }
}

/// Irreducible characters of a finite group: one row per irreducible (the
/// trivial character first), one column per conjugacy class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    names: Vec<String>,
    values: Vec<Vec<Cyclotomic>>,
    class_sizes: Vec<usize>,
    group_order: usize,
}

impl CharacterTable {
    pub fn num_irreducibles(&self) -> usize {
        self.values.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn value(&self, irreducible: usize, class: usize) -> &Cyclotomic {
        &self.values[irreducible][class]
    }

    pub fn row(&self, irreducible: usize) -> &[Cyclotomic] {
        &self.values[irreducible]
    }

    pub fn dimension(&self, irreducible: usize) -> u64 {
        self.values[irreducible][0]
            .to_integer()
            .and_then(|d| u64::try_from(d).ok())
            .expect("validated dimensions are positive integers")
    }

    /// `⟨χ_a, χ_b⟩ = |G|^{-1} Σ_c |c| χ_a(c) conj(χ_b(c))`.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let order = a[0].order();
        let mut acc = Cyclotomic::zero(order);
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            let term = (x * &y.complex_conjugate()).scale(&rational(size as i64));
            acc = &acc + &term;
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group_order)))
    }

    /// Exact column orthogonality: `Σ_χ χ(c) conj χ(d) = δ_{cd} |G|/|c|`.
    pub fn column_orthogonality_holds(&self) -> bool {
        let k = self.class_sizes.len();
        let order = self.values[0][0].order();
        (0..k).all(|c| {
            (0..k).all(|d| {
                let mut acc = Cyclotomic::zero(order);
                for row in &self.values {
                    acc = &acc + &(&row[c] * &row[d].complex_conjugate());
                }
                let expect = if c == d {
                    (self.group_order / self.class_sizes[c]) as i64
                } else {
                    0
                };
                acc == Cyclotomic::from_integer(order, expect)
            })
        })
    }
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact validation: shape, trivial first row, positive integral degrees,
/// `Σ dim² = |G|`, and row orthogonality.
pub fn validate_character_table(
    group: &FiniteGroup,
    classes: &ConjugacyClasses,
    names: Vec<String>,
    values: Vec<Vec<Cyclotomic>>,
) -> Result<CharacterTable> {
    let k = classes.len();
    let bad = |msg: String| Error::InvalidCharacterTable(msg);
    if values.len() != k {
        return Err(bad(format!("{} rows for {k} conjugacy classes", values.len())));
    }
    if names.len() != k {
        return Err(bad(format!("{} names for {k} irreducibles", names.len())));
    }
    let order = group.exponent();
    for (i, row) in values.iter().enumerate() {
        if row.len() != k {
            return Err(bad(format!("row {i} has {} entries, expected {k}", row.len())));
        }
        if row.iter().any(|v| v.order() != order) {
            return Err(bad(format!("row {i} is not over Q(zeta_{order})")));
        }
    }
    let one = Cyclotomic::one(order);
    if values[0].iter().any(|v| v != &one) {
        return Err(bad("the first row must be the trivial character".into()));
    }
    let mut square_sum = BigInt::zero();
    for (i, row) in values.iter().enumerate() {
        match row[0].to_integer() {
            Some(d) if d > BigInt::zero() => square_sum += &d * &d,
            _ => {
                return Err(bad(format!(
                    "degree of {} is not a positive integer: {}",
                    names[i], row[0]
                )))
            }
        }
    }
    if square_sum != BigInt::from(group.order()) {
        return Err(bad(format!(
            "sum of squared degrees is {square_sum}, group order {}",
            group.order()
        )));
    }
    let table = CharacterTable {
        names,
        values,
        class_sizes: classes.sizes(),
        group_order: group.order(),
    };
    for i in 0..k {
        for j in i..k {
            let ip = table.inner_product(&table.values[i], &table.values[j]);
            let expect = Cyclotomic::from_integer(order, i64::from(i == j));
            if ip != expect {
                return Err(bad(format!(
                    "<{}, {}> = {ip}, expected {expect}",
                    table.names[i], table.names[j]
                )));
            }
        }
    }
    Ok(table)
}

/// A finite group together with its classes and validated character table.
/// Irreducible 0 is the trivial representation (the unit object).
#[derive(Clone, Debug)]
pub struct GroupContext {
    group: FiniteGroup,
    classes: ConjugacyClasses,
    table: CharacterTable,
}

impl GroupContext {
    /// Validates a character table whose rows give one value per element.
    pub fn from_element_characters(
        group: FiniteGroup,
        names: Vec<String>,
        per_element: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let classes = conjugacy_classes(&group);
        for (i, row) in per_element.iter().enumerate() {
            if row.len() != group.order() {
                return Err(Error::InvalidCharacterTable(format!("row {i} has wrong length")));
            }
            for c in 0..classes.len() {
                let rep = &row[classes.representative(c)];
                if classes.members(c).iter().any(|&g| &row[g] != rep) {
                    return Err(Error::InvalidCharacterTable(format!(
                        "row {i} is not constant on class {c}"
                    )));
                }
            }
        }
        let values = per_element
            .into_iter()
            .map(|row| {
                (0..classes.len())
                    .map(|c| row[classes.representative(c)].clone())
                    .collect()
            })
            .collect();
        let table = validate_character_table(&group, &classes, names, values)?;
        Ok(GroupContext { group, classes, table })
    }

    /// Validates a table given by class columns in the order of
    /// `representatives` (canonical class order when `None`).
    pub fn from_class_table(
        group: FiniteGroup,
        names: Vec<String>,
        representatives: Option<&[usize]>,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let classes = conjugacy_classes(&group);
        let values = match representatives {
            None => values,
            Some(reps) => {
                if reps.len() != classes.len() {
                    return Err(Error::InvalidCharacterTable(format!(
                        "{} class representatives for {} classes",
                        reps.len(),
                        classes.len()
                    )));
                }
                let mut column_of = vec![usize::MAX; classes.len()];
                for (col, &g) in reps.iter().enumerate() {
                    if g >= group.order() {
                        return Err(Error::InvalidCharacterTable(format!("representative {g} out of range")));
                    }
                    let c = classes.class_of(g);
                    if column_of[c] != usize::MAX {
                        return Err(Error::InvalidCharacterTable(format!(
                            "representatives {} and {g} are conjugate",
                            reps[column_of[c]]
                        )));
                    }
                    column_of[c] = col;
                }
                values
                    .into_iter()
                    .map(|row| {
                        if row.len() != reps.len() {
                            return Err(Error::InvalidCharacterTable("ragged character table".into()));
                        }
                        Ok(column_of.iter().map(|&col| row[col].clone()).collect())
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let table = validate_character_table(&group, &classes, names, values)?;
        Ok(GroupContext { group, classes, table })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.table.num_irreducibles()
    }

    pub fn irreducible_names(&self) -> &[String] {
        self.table.names()
    }

    pub fn irreducible_index(&self, name: &str) -> Option<usize> {
        self.table.names().iter().position(|n| n == name)
    }

    /// Character value of irreducible `i` at element `g`.
    pub fn character_at(&self, i: usize, g: usize) -> &Cyclotomic {
        self.table.value(i, self.classes.class_of(g))
    }

    pub fn field_order(&self) -> u32 {
        self.group.exponent()
    }

    fn per_element_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.num_irreducibles())
            .map(|i| (0..self.order()).map(|g| self.character_at(i, g).clone()).collect())
            .collect()
    }

    /// Direct product with Kronecker-product characters.
    pub fn product(&self, other: &GroupContext) -> Result<GroupContext> {
        let group = self.group.product(&other.group);
        let order = group.exponent();
        let k = other.order();
        let (rows_a, rows_b) = (self.per_element_rows(), other.per_element_rows());
        let mut names = Vec::new();
        let mut values = Vec::new();
        for (i, ra) in rows_a.iter().enumerate() {
            for (j, rb) in rows_b.iter().enumerate() {
                names.push(match (i, j) {
                    (0, 0) => "1".to_string(),
                    _ => format!("{}.{}", self.irreducible_names()[i], other.irreducible_names()[j]),
                });
                let row = (0..group.order())
                    .map(|x| Ok(&ra[x / k].embed(order)? * &rb[x % k].embed(order)?))
                    .collect::<Result<Vec<_>>>()?;
                values.push(row);
            }
        }
        GroupContext::from_element_characters(group, names, values)
    }

    /// Serializable description in the group-file format.
    pub fn to_description(&self) -> GroupDescription {
        GroupDescription {
            name: self.name().to_string(),
            order: self.order(),
            cayley: self.group.cayley().to_vec(),
            exponent: self.field_order(),
            irreducibles: Some(self.irreducible_names().to_vec()),
            class_representatives: Some(
                (0..self.classes.len())
                    .map(|c| self.classes.representative(c))
                    .collect(),
            ),
            character_table: (0..self.num_irreducibles())
                .map(|i| self.table.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl fmt::Display for GroupContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (order {}, {} classes)",
            self.name(),
            self.order(),
            self.classes.len()
        )
    }
}

/// On-disk group description (JSON).
///
/// `character_table` rows follow `irreducibles` (trivial first); columns
/// follow `class_representatives`, or the canonical class order when that
/// field is absent. Entries are strings such as `1`, `-1`, `z^1 - z^2`,
/// with `z` a primitive `exponent`-th root of unity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDescription {
    pub name: String,
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
    pub exponent: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducibles: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_representatives: Option<Vec<usize>>,
    pub character_table: Vec<Vec<String>>,
}

impl GroupDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group descriptions serialize")
    }

    pub fn build(&self) -> Result<GroupContext> {
        if self.cayley.len() != self.order {
            return Err(Error::NotAGroup(format!(
                "declared order {} but the Cayley table has {} rows",
                self.order,
                self.cayley.len()
            )));
        }
        let group = FiniteGroup::new(self.name.clone(), self.cayley.clone())?;
        if group.exponent() != self.exponent {
            return Err(Error::InvalidCharacterTable(format!(
                "declared exponent {} but the group has exponent {}",
                self.exponent,
                group.exponent()
            )));
        }
        let names = self.irreducibles.clone().unwrap_or_else(|| {
            (0..self.character_table.len())
                .map(|i| if i == 0 { "1".to_string() } else { format!("X{i}") })
                .collect()
        });
        let values = self
            .character_table
            .iter()
            .map(|row| row.iter().map(|s| Cyclotomic::parse(self.exponent, s)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        GroupContext::from_class_table(group, names, self.class_representatives.as_deref(), values)
    }
}

/// Built-in groups: `trivial`, `z<m>`, `klein`, `s3`, and direct products
/// written `AxB` (e.g. `z2xz2`, `z3xs3`).
pub fn builtin(name: &str) -> Result<GroupContext> {
    let name = name.trim().to_ascii_lowercase();
    if name.contains('x') {
        let mut factors = name.split('x').map(builtin);
        let first = factors.next().expect("split yields at least one piece")?;
        let mut g = factors.try_fold(first, |acc, f| acc.product(&f?))?;
        g.group.name = name.clone();
        return Ok(g);
    }
    match name.as_str() {
        "trivial" | "1" => cyclic(1, "trivial"),
        "klein" | "v4" => {
            let mut g = builtin("z2xz2")?;
            g.group.name = "klein".into();
            Ok(g)
        }
        "s3" => symmetric3(),
        _ => match name.strip_prefix('z').and_then(|m| m.parse::<usize>().ok()) {
            Some(m) if m >= 1 => cyclic(m, &name),
            _ => Err(Error::Parse(format!("unknown built-in group {name:?}"))),
        },
    }
}

fn cyclic(m: usize, name: &str) -> Result<GroupContext> {
    let cayley = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    let group = FiniteGroup::new(name, cayley)?;
    let names = (0..m)
        .map(|j| match j {
            0 => "1".to_string(),
            1 => "chi".to_string(),
            _ => format!("chi{j}"),
        })
        .collect();
    let values = (0..m)
        .map(|j| {
            (0..m)
                .map(|g| Cyclotomic::zeta_power(m as u32, (j * g) as i64))
                .collect()
        })
        .collect();
    GroupContext::from_element_characters(group, names, values)
}

fn symmetric3() -> Result<GroupContext> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let cayley = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let group = FiniteGroup::new("s3", cayley)?;
    let sign = |p: &[usize; 3]| {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let fixed = |p: &[usize; 3]| (0..3).filter(|&i| p[i] == i).count() as i64;
    let order = group.exponent();
    let values = vec![
        perms.iter().map(|_| Cyclotomic::one(order)).collect(),
        perms.iter().map(|p| Cyclotomic::from_integer(order, sign(p))).collect(),
        perms
            .iter()
            .map(|p| Cyclotomic::from_integer(order, fixed(p) - 1))
            .collect(),
    ];
    let names = vec!["1".into(), "sgn".into(), "V".into()];
    GroupContext::from_element_characters(group, names, values)
}

/// Multiplicities of the irreducibles in a class function (one value per
/// class); `None` if any of them is not an integer.
pub fn decompose_class_function(ctx: &GroupContext, values: &[Cyclotomic]) -> Option<Vec<BigInt>> {
    (0..ctx.num_irreducibles())
        .map(|i| ctx.table.inner_product(values, ctx.table.row(i)).to_integer())
        .collect()
}
