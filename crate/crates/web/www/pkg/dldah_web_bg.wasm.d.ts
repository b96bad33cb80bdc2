/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_ringsdemo_free: (a: number, b: number) => void;
export const __wbg_ringsresult_free: (a: number, b: number) => void;
export const atanh_curve: (a: number, b: number, c: number) => [number, number];
export const atanh_penalty: (a: number, b: number) => number;
export const class_weighting: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const ringsdemo_labels: (a: number) => [number, number];
export const ringsdemo_new: (a: number, b: number, c: number) => [number, number, number];
export const ringsdemo_points: (a: number) => [number, number];
export const ringsdemo_run_dldah: (a: number, b: number, c: number, d: number) => [number, number, number];
export const ringsdemo_run_ldah: (a: number, b: number) => [number, number, number];
export const ringsresult_bits: (a: number) => number;
export const ringsresult_grid: (a: number) => [number, number];
export const ringsresult_map: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
