//! The shipped fixture corpus, rebuilt from its constructions.

use mpd_core::constructions::{
    m10, m12, m12_2, pgaml, pgl, psl, psl2_11_on_11_points, psl3_points_and_lines, psl_hint, wreath_with_z2,
};
use mpd_core::group_file::GroupFile;
use mpd_core::{PermGroup, Result};

pub struct Fixture {
    /// File stem, e.g. `PGL27`.
    pub name: &'static str,
    pub comment: &'static str,
    pub file: GroupFile,
}

fn plain(name: &'static str, comment: &'static str, g: PermGroup) -> Fixture {
    Fixture {
        name,
        comment,
        file: GroupFile::from_group(&g),
    }
}

pub fn all() -> Result<Vec<Fixture>> {
    let a5 = PermGroup::alternating(5);
    let v4 = PermGroup::parse(4, &["(1,2)(3,4)", "(1,3)(2,4)"])?;
    let mut s4_mod_v4 = GroupFile::from_group(&PermGroup::symmetric(4));
    s4_mod_v4.kernel = Some(v4.generators().to_vec());
    Ok(vec![
        plain("A5", "Alt(5) on 5 points", a5.clone()),
        plain("S5", "Sym(5) on 5 points", PermGroup::symmetric(5)),
        plain("A6", "Alt(6) on 6 points", PermGroup::alternating(6)),
        plain("S6", "Sym(6) on 6 points", PermGroup::symmetric(6)),
        plain("S7", "Sym(7) on 7 points", PermGroup::symmetric(7)),
        plain(
            "PSL27",
            "PSL(3,2) = PSL(2,7) on the 7 points of the Fano plane",
            psl(3, 2)?,
        ),
        plain(
            "PGL27",
            "PGL(2,7) on the 8 points of the projective line over F7",
            pgl(2, 7)?,
        ),
        plain(
            "PSL28",
            "PSL(2,8) on the 9 points of the projective line over F8",
            psl(2, 8)?,
        ),
        plain(
            "PGammaL28",
            "PGammaL(2,8) on the projective line over F8, with the Frobenius map",
            pgaml(2, 8)?,
        ),
        plain(
            "PSL2_11",
            "PSL(2,11) on the 11 conjugates of an Alt(5) subgroup, found by seeded search",
            psl2_11_on_11_points()?,
        ),
        plain(
            "PGL29",
            "PGL(2,9) on the 10 points of the projective line over F9",
            pgl(2, 9)?,
        ),
        plain(
            "M10",
            "M10: PSL(2,9) with a diagonal-times-Frobenius map, on 10 points",
            m10()?,
        ),
        plain(
            "AutA6",
            "PGammaL(2,9) = Aut(Alt(6)) on the projective line over F9",
            pgaml(2, 9)?,
        ),
        plain(
            "PSL34",
            "PSL(3,4) on the 21 points of PG(2,4), generated by root elements",
            psl(3, 4)?,
        ),
        plain(
            "PGammaL34",
            "PGammaL(3,4) on the 21 points of PG(2,4), with diagonal and Frobenius maps",
            pgaml(3, 4)?,
        ),
        plain(
            "PSL34_2",
            "PSL(3,4) with the point-line polarity, on the 21 points and 21 lines of PG(2,4)",
            psl3_points_and_lines(4, true)?,
        ),
        plain("M12", "M12 on 12 points", m12()?),
        plain(
            "M12_2",
            "Aut(M12) on 24 points: the stabilizer in M24 of a dodecad and its complement, seed 0",
            m12_2(0)?,
        ),
        plain(
            "A5wrZ2",
            "Alt(5) wr Z2 in its imprimitive action on 10 points",
            wreath_with_z2(&a5)?,
        ),
        plain(
            "A5xA6",
            "Alt(5) x Alt(6) on 5 + 6 points",
            PermGroup::direct_product(&[a5, PermGroup::alternating(6)]),
        ),
        plain(
            "Sym4",
            "Sym(4) on 4 points; has a normal Klein four-group",
            PermGroup::symmetric(4),
        ),
        plain(
            "D8",
            "dihedral group of order 8 on the square's vertices",
            PermGroup::parse(4, &["(1,2,3,4)", "(1,3)"])?,
        ),
        plain(
            "Z6",
            "cyclic group of order 6 on 2 + 3 points",
            PermGroup::parse(5, &["(1,2)(3,4,5)"])?,
        ),
        Fixture {
            name: "S4modV4",
            comment: "Sym(4) modulo its normal Klein four-group",
            file: s4_mod_v4,
        },
    ])
}

/// Hint files, as (file stem, JSON text).
pub fn hints() -> Result<Vec<(&'static str, String)>> {
    Ok(vec![
        ("PSL34.hint", psl_hint(3, 4, false)?.to_json()),
        ("PSL34_2.hint", psl_hint(3, 4, true)?.to_json()),
    ])
}

impl Fixture {
    pub fn render(&self) -> String {
        self.file.render(&[self.comment])
    }
}
