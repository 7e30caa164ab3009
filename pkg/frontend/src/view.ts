// Pure scene construction: snapshots in, a display list out. The painter
// draws the list; nothing here computes physics or game outcomes. In
// particular a cube's rendered height is exactly the server's display_y and
// the scale beam angle comes exclusively from the snapshot's tilt field.

import { GameName, Snapshot, isSnapshot } from "./protocol.js";

export type SceneItem =
    | { kind: "rect"; x: number; y: number; w: number; h: number;
        color: string; label?: string }
    | { kind: "line"; x1: number; y1: number; x2: number; y2: number;
        color: string; width: number }
    | { kind: "circle"; x: number; y: number; r: number; color: string }
    | { kind: "text"; x: number; y: number; text: string; color: string;
        size: number }
    | { kind: "overlay"; text: string; hint: string; color: string };

export const CUBE_SIZE = 0.12; // m
export const BEAM_DROP = 0.06; // m of beam-end fall when a side is down

export class ViewModel {
    snapshot: Snapshot | null = null;
    banner: string | null = null;

    ingest(raw: unknown): void {
        if (isSnapshot(raw)) {
            this.snapshot = raw;
            this.banner = null;
        } else {
            // Keep rendering the last good frame.
            this.banner = "malformed snapshot";
        }
    }
}

function cubeColor(game: GameName, phase: string): string {
    const base = game === "arrange" ? "#3b6fd4" : "#3da45b";
    return phase === "lifting" || phase === "held_resting" ? base : base + "cc";
}

export function buildScene(
    view: ViewModel,
    game: GameName,
    zones: Record<string, number>,
    hand: { x: number; y: number },
): SceneItem[] {
    const items: SceneItem[] = [];
    items.push({ kind: "line", x1: -0.3, y1: 0, x2: 2.7, y2: 0,
                 color: "#555", width: 2 });

    for (const [name, x] of Object.entries(zones)) {
        if (name.startsWith("slot")) {
            items.push({ kind: "rect", x: x - 0.08, y: -0.02, w: 0.16, h: 0.02,
                         color: "#777" });
        } else if (name.startsWith("container")) {
            items.push({ kind: "rect", x: x - 0.09, y: 0, w: 0.18, h: 0.10,
                         color: "#8a5a2b", label: name.replace("container_", "") });
        }
    }

    const snap = view.snapshot;

    if (game === "balance" && zones.left !== undefined) {
        const cx = (zones.left + zones.right) / 2;
        const tilt = snap?.tilt ?? "level";
        const drop = tilt === "level" ? 0
            : tilt === "left_down" ? BEAM_DROP : -BEAM_DROP;
        const beamY = 0.5;
        items.push({ kind: "rect", x: cx - 0.02, y: 0, w: 0.04, h: beamY,
                     color: "#6b6b6b" });
        items.push({ kind: "line",
                     x1: zones.left, y1: beamY - drop,
                     x2: zones.right, y2: beamY + drop,
                     color: "#6b6b6b", width: 4 });
        for (const side of ["left", "right"] as const) {
            const x = zones[side];
            const endY = side === "left" ? beamY - drop : beamY + drop;
            items.push({ kind: "line", x1: x, y1: endY, x2: x, y2: endY - 0.18,
                         color: "#6b6b6b", width: 2 });
            items.push({ kind: "rect", x: x - 0.14, y: endY - 0.22, w: 0.28,
                         h: 0.04, color: "#8a5a2b", label: side });
        }
    }

    if (snap !== null) {
        for (const cube of snap.cubes) {
            items.push({
                kind: "rect",
                x: cube.x - CUBE_SIZE / 2,
                y: cube.display_y,
                w: CUBE_SIZE,
                h: CUBE_SIZE,
                color: cubeColor(game, cube.phase),
                label: String(cube.id),
            });
        }
        const readout = [
            `attempts ${snap.attempts}`,
            `gesture ${snap.gesture}`,
            snap.ratio !== undefined ? `R ${snap.ratio.toFixed(2)}` : "R -",
            snap.gave_up ? "gave up" : "",
        ].filter(Boolean).join("   ");
        items.push({ kind: "text", x: -0.25, y: 1.12, text: readout,
                     color: "#222", size: 14 });

        if (snap.screen === "incorrect") {
            items.push({ kind: "overlay", text: "Incorrect",
                         hint: "press Reset to try again", color: "#a33" });
        } else if (snap.screen === "success") {
            items.push({ kind: "overlay", text: "Success",
                         hint: "press Restart for a new shuffle", color: "#2a7" });
        }
    }

    items.push({ kind: "circle", x: hand.x, y: hand.y, r: 0.035,
                 color: "#d4a03b" });

    if (view.banner !== null) {
        items.push({ kind: "overlay", text: view.banner,
                     hint: "", color: "#444" });
    }
    return items;
}
