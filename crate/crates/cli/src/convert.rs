//! `fea2vr convert`: listings in, vrmesh (and optionally OBJ, report and
//! remapped result listings) out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use fea2vr_core::io::obj::obj_to_string;
use fea2vr_core::pipeline::write_remapped_results;
use fea2vr_core::{
    build_mesh, parse_element_list, parse_node_list, parse_result_list, parse_surface_node_list,
    remap_field, vrmesh_to_vec, BuildOptions, ConversionReport, MissingPolicy, ParseWarning,
    TypeMapping, VrMesh,
};

use crate::output::OutputSet;
use crate::Failure;

#[derive(Debug, Clone)]
pub struct ConvertOptions {
    pub nodes: PathBuf,
    pub elements: PathBuf,
    pub surface_nodes: Option<PathBuf>,
    pub results: Vec<(String, PathBuf)>,
    pub units: Vec<(String, String)>,
    pub mapping: TypeMapping,
    pub value_column: usize,
    pub build: BuildOptions,
    pub missing: MissingPolicy,
    pub output: PathBuf,
    pub obj: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub remapped_results: Option<PathBuf>,
}

impl ConvertOptions {
    pub fn new(nodes: impl Into<PathBuf>, elements: impl Into<PathBuf>, output: impl Into<PathBuf>) -> Self {
        ConvertOptions {
            nodes: nodes.into(),
            elements: elements.into(),
            surface_nodes: None,
            results: Vec::new(),
            units: Vec::new(),
            mapping: TypeMapping::default(),
            value_column: 1,
            build: BuildOptions::default(),
            missing: MissingPolicy::Error,
            output: output.into(),
            obj: None,
            report: None,
            remapped_results: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Conversion {
    pub mesh: VrMesh,
    pub report: ConversionReport,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Summary {
    pub conversion: Conversion,
    pub written: Vec<PathBuf>,
}

fn read_listing(what: &str, path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::cannot_read(what, path, e))?;
    // headers may carry non-UTF-8 unit symbols
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn in_file(path: &Path) -> impl Fn(fea2vr_core::Error) -> Failure + '_ {
    move |e| Failure::failed(format!("{}: {e}", path.display()))
}

fn note(warnings: &mut Vec<String>, path: &Path, found: Vec<ParseWarning>) {
    warnings.extend(found.into_iter().map(|w| format!("{}: {w}", path.display())));
}

/// A results or units name must be usable as a file stem.
pub fn check_field_name(name: &str) -> Result<(), String> {
    let ok = !name.is_empty()
        && !name.starts_with('.')
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'));
    if ok {
        Ok(())
    } else {
        Err(format!("invalid field name '{name}'"))
    }
}

/// Read and convert without writing anything.
pub fn convert(opts: &ConvertOptions) -> Result<Conversion, Failure> {
    let mut names = BTreeSet::new();
    for (name, _) in &opts.results {
        check_field_name(name).map_err(Failure::unreadable)?;
        if !names.insert(name.as_str()) {
            return Err(Failure::unreadable(format!("field '{name}' given twice")));
        }
    }
    let mut units: BTreeMap<&str, &str> = BTreeMap::new();
    for (name, unit) in &opts.units {
        if !names.contains(name.as_str()) {
            return Err(Failure::unreadable(format!("units given for unknown field '{name}'")));
        }
        units.insert(name, unit);
    }

    let node_text = read_listing("nodes", &opts.nodes)?;
    let element_text = read_listing("elements", &opts.elements)?;
    let surface_text = opts
        .surface_nodes
        .as_deref()
        .map(|p| read_listing("surface nodes", p).map(|t| (p, t)))
        .transpose()?;
    let result_texts = opts
        .results
        .iter()
        .map(|(name, path)| read_listing(&format!("results {name}"), path).map(|t| (name, path, t)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut warnings = Vec::new();
    let (nodes, found) = parse_node_list(&node_text).map_err(in_file(&opts.nodes))?;
    note(&mut warnings, &opts.nodes, found);
    let (elements, found) = parse_element_list(&element_text, &opts.mapping.expected_node_counts())
        .map_err(in_file(&opts.elements))?;
    note(&mut warnings, &opts.elements, found);
    let surface = surface_text.map(|(path, text)| {
        let (ids, w) = parse_surface_node_list(&text);
        note(&mut warnings, path, w);
        ids
    });

    let (mut mesh, report) = build_mesh(&nodes, &elements, &opts.mapping, surface.as_ref(), &opts.build)?;

    for (name, path, text) in result_texts {
        let (raw, found) = parse_result_list(&text, opts.value_column).map_err(in_file(path))?;
        note(&mut warnings, path, found);
        let mut field = remap_field(name, &raw, &mesh.node_id_map, opts.missing)?;
        if let Some(unit) = units.get(name.as_str()) {
            field = field.with_units(*unit);
        }
        mesh.insert_field(field);
    }

    Ok(Conversion {
        mesh,
        report,
        warnings,
    })
}

/// Convert and write every requested output atomically.
pub fn run(opts: &ConvertOptions) -> Result<Summary, Failure> {
    let conversion = convert(opts)?;
    let mesh = &conversion.mesh;

    let mut out = OutputSet::new();
    out.stage(&opts.output, &vrmesh_to_vec(mesh, &conversion.report))?;
    if let Some(path) = &opts.obj {
        out.stage(path, obj_to_string(mesh).as_bytes())?;
    }
    if let Some(path) = &opts.report {
        let mut json = serde_json::to_vec_pretty(&conversion.report)
            .map_err(|e| Failure::failed(format!("cannot encode report: {e}")))?;
        json.push(b'\n');
        out.stage(path, &json)?;
    }
    if let Some(dir) = &opts.remapped_results {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::failed(format!("cannot write '{}': {e}", dir.display())))?;
        for field in mesh.fields.values() {
            out.stage(&dir.join(format!("{}.lis", field.name)), write_remapped_results(field).as_bytes())?;
        }
    }
    let written = out.commit()?;
    Ok(Summary { conversion, written })
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.conversion.report;
        let mesh = &self.conversion.mesh;
        writeln!(f, "nodes: {}", r.input_nodes)?;
        writeln!(f, "elements: {}", r.input_elements)?;
        if let Some(surface) = r.surface_nodes {
            writeln!(f, "surface nodes: {surface}")?;
            writeln!(f, "excluded nodes: {}", r.excluded_nodes)?;
        }
        if r.unsupported_elements > 0 {
            writeln!(f, "unsupported elements: {}", r.unsupported_elements)?;
        }
        writeln!(f, "vertices: {}", mesh.vertex_count())?;
        writeln!(f, "triangles: {}", mesh.triangle_count())?;
        if r.duplicate_faces_removed > 0 {
            writeln!(f, "duplicate faces removed: {}", r.duplicate_faces_removed)?;
        }
        if r.degenerate_triangles > 0 {
            writeln!(
                f,
                "degenerate triangles: {} ({} removed)",
                r.degenerate_triangles, r.degenerate_triangles_removed
            )?;
        }
        for field in mesh.fields.values() {
            writeln!(f, "field {}: min {:?} max {:?}", field.name, field.min, field.max)?;
        }
        for path in &self.written {
            writeln!(f, "wrote {}", path.display())?;
        }
        Ok(())
    }
}
