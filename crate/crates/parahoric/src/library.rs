//! The descriptor library shipped with the crate (also under `descriptors/`).

pub const SHIPPED: &[(&str, &str)] = &[
    ("gl1", include_str!("../descriptors/gl1.toml")),
    ("gl2", include_str!("../descriptors/gl2.toml")),
    ("gl3", include_str!("../descriptors/gl3.toml")),
    ("gl4", include_str!("../descriptors/gl4.toml")),
    ("pgl2", include_str!("../descriptors/pgl2.toml")),
    ("pgl3", include_str!("../descriptors/pgl3.toml")),
    ("pgl4", include_str!("../descriptors/pgl4.toml")),
    ("ramified_torus_2", include_str!("../descriptors/ramified_torus_2.toml")),
    ("ramified_torus_3", include_str!("../descriptors/ramified_torus_3.toml")),
    ("res_gl2_ram2", include_str!("../descriptors/res_gl2_ram2.toml")),
    ("res_gl2_ram3", include_str!("../descriptors/res_gl2_ram3.toml")),
    ("res_gl2_unr2", include_str!("../descriptors/res_gl2_unr2.toml")),
    ("res_gl2_unr3", include_str!("../descriptors/res_gl2_unr3.toml")),
    ("res_pgl2_ram2", include_str!("../descriptors/res_pgl2_ram2.toml")),
    ("res_pgl2_ram3", include_str!("../descriptors/res_pgl2_ram3.toml")),
    ("res_pgl2_unr2", include_str!("../descriptors/res_pgl2_unr2.toml")),
    ("res_pgl2_unr3", include_str!("../descriptors/res_pgl2_unr3.toml")),
    ("res_sl2_ram2", include_str!("../descriptors/res_sl2_ram2.toml")),
    ("res_sl2_ram3", include_str!("../descriptors/res_sl2_ram3.toml")),
    ("res_sl2_unr2", include_str!("../descriptors/res_sl2_unr2.toml")),
    ("res_sl2_unr3", include_str!("../descriptors/res_sl2_unr3.toml")),
    ("sl2", include_str!("../descriptors/sl2.toml")),
    ("sl3", include_str!("../descriptors/sl3.toml")),
    ("sl4", include_str!("../descriptors/sl4.toml")),
];

pub fn get(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<crate::descriptor::Loaded, crate::CliError> {
    let text = get(name).ok_or_else(|| crate::CliError::Validation(format!("no shipped descriptor {name:?}")))?;
    crate::descriptor::GroupDescriptor::parse(text)?.load()
}
