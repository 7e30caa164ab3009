// Browser bootstrap: wires the canvas, keyboard squeeze, pointer hand, and
// action buttons to a live session. Hold F to pinch (thumb pad), J to grip
// (palm pad); move the mouse over the scene to steer the hand.

import { GameClient, sessionUrl } from "./client.js";
import { InputController } from "./input.js";
import { GameName, isSnapshot } from "./protocol.js";
import { DEFAULT_VIEWPORT, paint, toWorld } from "./painter.js";
import { ViewModel, buildScene } from "./view.js";

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const view = new ViewModel();
let zones: Record<string, number> = {};
let game: GameName = "arrange";

function start(): void {
    const params = new URLSearchParams(window.location.search);
    game = (params.get("game") as GameName) ?? "arrange";
    const seed = Number(params.get("seed") ?? 1);
    const cd = params.get("cd") !== "off";

    const ws = new WebSocket(sessionUrl(window.location.href));
    const socket = {
        send: (data: string) => ws.send(data),
        close: () => ws.close(),
        set onmessage(handler: (event: { data: string }) => void) {
            ws.onmessage = (ev) => handler({ data: String(ev.data) });
        },
        set onclose(handler: () => void) {
            ws.onclose = () => handler();
        },
    };
    const client = new GameClient(socket, {
        onOpened: (msg) => {
            zones = msg.zones;
            statusEl.textContent =
                `session ${msg.session} | ${msg.game} | seed ${msg.seed} | ` +
                `ratio display ${msg.cd ? "on" : "off"}`;
        },
        onSnapshot: (msg) => view.ingest(msg),
        onProtocolError: (reason) => { statusEl.textContent = `rejected: ${reason}`; },
        onDisconnect: () => {
            controller.disconnected("connection lost");
            statusEl.textContent = "disconnected";
        },
    });
    const controller = new InputController((m) => client.sendMessage(m));

    ws.onopen = () => client.open(game, seed, cd, true);

    canvas.addEventListener("pointermove", (ev) => {
        const rect = canvas.getBoundingClientRect();
        const [x, y] = toWorld(DEFAULT_VIEWPORT,
                               ev.clientX - rect.left, ev.clientY - rect.top);
        controller.pointerMove(Number(x.toFixed(4)), Number(y.toFixed(4)));
    });

    window.addEventListener("keydown", (ev) => {
        if (ev.code === "KeyF") controller.setKey("thumb", true);
        if (ev.code === "KeyJ") controller.setKey("palm", true);
    });
    window.addEventListener("keyup", (ev) => {
        if (ev.code === "KeyF") controller.setKey("thumb", false);
        if (ev.code === "KeyJ") controller.setKey("palm", false);
    });

    for (const name of ["grab", "release", "submit", "reset", "restart",
                        "giveup"] as const) {
        document.getElementById(`btn-${name}`)?.addEventListener("click", () => {
            controller.clickAction(name, view.snapshot?.cubes);
        });
    }

    setInterval(() => controller.forceTick(), 20); // 50 Hz squeeze stream

    function frame(): void {
        const items = buildScene(view, game, zones,
                                 { x: controller.state.handX,
                                   y: controller.state.handY });
        paint(ctx, DEFAULT_VIEWPORT, items);
        requestAnimationFrame(frame);
    }
    requestAnimationFrame(frame);

    if (view.snapshot && !isSnapshot(view.snapshot)) {
        statusEl.textContent = "bad snapshot";
    }
}

start();
