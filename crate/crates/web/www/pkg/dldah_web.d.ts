/* tslint:disable */
/* eslint-disable */

/**
 * Two rings (inner class 0, outer class 1) with a query/gallery split.
 */
export class RingsDemo {
    free(): void;
    [Symbol.dispose](): void;
    labels(): Uint8Array;
    constructor(seed: number, per_class: number, noise: number);
    /**
     * `x0, y0, x1, y1, …` for every point.
     */
    points(): Float64Array;
    run_dldah(bits: number, epochs: number, resolution: number): RingsResult;
    /**
     * Linear LDA hashing; the code length is capped at the input dimension.
     */
    run_ldah(resolution: number): RingsResult;
}

/**
 * Result of hashing the rings with one method.
 */
export class RingsResult {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bits: number;
    /**
     * Predicted class per grid cell, row-major, from the nearest gallery
     * code in Hamming distance.
     */
    readonly grid: Uint8Array;
    readonly map: number;
}

/**
 * `tanh(α z)` sampled at `samples` evenly spaced points of `[-range, range]`.
 */
export function atanh_curve(alpha: number, range: number, samples: number): Float64Array;

/**
 * The scale regularizer `ν α⁻²` for one bit.
 */
export function atanh_penalty(alpha: number, nu: number): number;

/**
 * Between-class objective on two Gaussian classes of the given sizes:
 * `[plain total, whitened total, plain per class (2), whitened per class (2)]`.
 */
export function class_weighting(small: number, large: number, separation: number, seed: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_ringsdemo_free: (a: number, b: number) => void;
    readonly __wbg_ringsresult_free: (a: number, b: number) => void;
    readonly atanh_curve: (a: number, b: number, c: number) => [number, number];
    readonly atanh_penalty: (a: number, b: number) => number;
    readonly class_weighting: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly ringsdemo_labels: (a: number) => [number, number];
    readonly ringsdemo_new: (a: number, b: number, c: number) => [number, number, number];
    readonly ringsdemo_points: (a: number) => [number, number];
    readonly ringsdemo_run_dldah: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly ringsdemo_run_ldah: (a: number, b: number) => [number, number, number];
    readonly ringsresult_bits: (a: number) => number;
    readonly ringsresult_grid: (a: number) => [number, number];
    readonly ringsresult_map: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
