fn main() { print!("{}", roof_catalog::catalog_text(&roof_catalog::list_roofs(5).unwrap())); }
